"""Scenario runs, parameter sweeps, CSV/manifest output and snapshot probing."""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .analysis import LABELS, population_classification, weight_stats
from .config import RunConfig, config_items
from .engine import Simulation, StepRecord
from .model import ACTION_NAMES, ENABLED, SUPPRESSED
from .snapshot import Snapshot, load_snapshot, save_snapshot

log = logging.getLogger(__name__)

TIMESERIES_HEADER = (
    ["t", "N", "births", "deaths", "grass_cells", "mean_energy", "total_energy"]
    + [f"act_{name}" for name in ACTION_NAMES]
)
WEIGHTS_HEADER = ["t", "gene_index", "mean", "std"]
SUMMARY_HEADER = [
    "run_index", "grass_probability", "motivation", "seed", "status", "survived",
    "final_n", "extinction_iteration", "majority_label",
    "frac_motivation_gated", "frac_reflex_only", "frac_other", "mating_suppressed_fraction",
]
PROBE_HEADER = ["agent_id", "label", "rule1", "rule2", "rule3", "mating_suppressed"]

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """Seed of run ``index`` in a sweep driven by one master seed.

    splitmix64 is a bijection, so distinct indices give distinct seeds.
    """
    return splitmix64((master ^ index) & _MASK64)


def timeseries_row(rec: StepRecord) -> list:
    return [rec.t, rec.n_agents, rec.births, rec.deaths, rec.grass_cells,
            repr(rec.mean_energy), repr(rec.total_energy)] + rec.action_counts.tolist()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class ScenarioResult:
    out_dir: Path
    manifest: dict
    records: list[StepRecord]
    final: Snapshot


def write_manifest(path, manifest: dict) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for key, value in manifest.items():
            f.write(f"{key} = {_fmt(value)}\n")


def read_manifest(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def run_scenario(
    config: RunConfig,
    seed: int | None = None,
    out_dir=None,
    resume: Snapshot | None = None,
    keep_records: bool = False,
) -> ScenarioResult:
    """Run one scenario and write its time series, weight stats, snapshots and manifest.

    With ``resume`` the run continues from that snapshot's world, RNG state
    and iteration instead of building a fresh population.
    """
    if seed is not None:
        config = replace(config, seed=seed)
    out = Path(out_dir if out_dir is not None else config.output_directory)
    out.mkdir(parents=True, exist_ok=True)
    if resume is not None:
        sim = Simulation(resume.world.copy(), config.evo, resume.make_rng(), resume.iteration)
    else:
        sim = Simulation.from_config(config)

    manifest = {"format_version": 1, "seed": config.seed}
    manifest.update({f"config.{k}": v for k, v in config_items(config)})
    if resume is not None:
        manifest["resumed_from_iteration"] = resume.iteration

    records = []
    extinction = None
    try:
        with open(out / "timeseries.csv", "w", newline="", encoding="utf-8") as ts_file, \
                open(out / "weights.csv", "w", newline="", encoding="utf-8") as w_file:
            ts = csv.writer(ts_file, lineterminator="\n")
            ws = csv.writer(w_file, lineterminator="\n")
            ts.writerow(TIMESERIES_HEADER)
            ws.writerow(WEIGHTS_HEADER)
            while sim.t < config.max_iterations and not sim.extinct:
                t = sim.t
                if t % config.weights_interval == 0:
                    stats = weight_stats(sim.world.genomes, t)
                    for i in range(len(stats.mean)):
                        ws.writerow([t, i, repr(float(stats.mean[i])), repr(float(stats.std[i]))])
                rec = sim.step()
                if keep_records:
                    records.append(rec)
                if t % config.timeseries_interval == 0:
                    ts.writerow(timeseries_row(rec))
                if sim.extinct:
                    extinction = t
                if config.snapshot_every and sim.t % config.snapshot_every == 0:
                    save_snapshot(out / f"snapshot_{sim.t:07d}.txt", config, sim.t, sim.world,
                                  sim.rng.bit_generator.state)
        save_snapshot(out / "final_snapshot.txt", config, sim.t, sim.world, sim.rng.bit_generator.state)
    except OSError as exc:
        manifest["status"] = f"io_error: {exc}"
        manifest["partial_output"] = "yes; files in this directory may be truncated"
        try:
            write_manifest(out / "manifest.txt", manifest)
        except OSError:
            pass
        raise

    summary = population_classification(sim.world.genomes, config.world.motivation_mode == ENABLED)
    manifest.update(
        status="ok",
        iterations_run=sim.t,
        outcome="extinct" if sim.extinct else "survived",
        final_n=sim.world.n_agents,
        extinction_iteration=extinction,
        majority_label=summary.majority_label if summary else None,
    )
    for label in LABELS:
        manifest[f"fraction.{label}"] = summary.fractions[label] if summary else None
    manifest["mating_suppressed_fraction"] = summary.mating_suppressed_fraction if summary else None
    write_manifest(out / "manifest.txt", manifest)
    final = Snapshot(config, sim.t, sim.world, sim.rng.bit_generator.state)
    return ScenarioResult(out, manifest, records, final)


def _run_dir(index: int, pg: float, mode: str, seed: int) -> str:
    return f"run{index:03d}_pg{pg:.6g}_{mode}_seed{seed}"


def _sweep_job(args) -> dict:
    index, config, out_dir = args
    row = {
        "run_index": index,
        "grass_probability": config.world.grass_probability,
        "motivation": config.world.motivation_mode,
        "seed": config.seed,
    }
    try:
        result = run_scenario(config, out_dir=out_dir)
    except Exception as exc:  # noqa: BLE001 - a failed run must not stop the sweep
        log.exception("sweep run %d failed", index)
        row.update(status=f"error: {type(exc).__name__}: {exc}".replace(",", ";"))
        return row
    m = result.manifest
    row.update(
        status="ok",
        survived=m["outcome"] == "survived",
        final_n=m["final_n"],
        extinction_iteration=m["extinction_iteration"],
        majority_label=m["majority_label"],
        frac_motivation_gated=m["fraction.motivation_gated"],
        frac_reflex_only=m["fraction.reflex_only"],
        frac_other=m["fraction.other"],
        mating_suppressed_fraction=m["mating_suppressed_fraction"],
    )
    return row


def sweep(
    base_config: RunConfig,
    grass_probabilities,
    modes,
    seeds,
    out_dir=None,
    jobs: int = 1,
) -> list[dict]:
    """Run every (P_g, mode, seed) combination and write ``summary.csv``.

    Rows are ordered by run index whatever ``jobs`` is, and every run draws
    only from its own seed, so the summary does not depend on parallelism.
    """
    if not grass_probabilities or not modes or not seeds:
        raise ValueError("sweep needs at least one grass probability, mode and seed")
    out = Path(out_dir if out_dir is not None else base_config.output_directory)
    out.mkdir(parents=True, exist_ok=True)
    tasks = []
    for pg in grass_probabilities:
        for mode in modes:
            for seed in seeds:
                index = len(tasks)
                cfg = replace(
                    base_config,
                    world=replace(base_config.world, grass_probability=float(pg), motivation_mode=mode),
                    seed=int(seed),
                )
                errors = cfg.validate()
                if errors:
                    from .config import ConfigError

                    raise ConfigError(errors)
                tasks.append((index, cfg, out / _run_dir(index, float(pg), mode, int(seed))))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_job, tasks))
    else:
        rows = [_sweep_job(task) for task in tasks]
    rows.sort(key=lambda r: r["run_index"])
    with open(out / "summary.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(SUMMARY_HEADER)
        for row in rows:
            w.writerow([_fmt(row.get(col)) for col in SUMMARY_HEADER])
    return rows


def read_summary(path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def probe_command(snapshot_path, out_dir=None) -> str:
    """Classify every agent of a snapshot; writes ``probe.csv`` and ``probe_summary.txt``."""
    snap = load_snapshot(snapshot_path)
    out = Path(out_dir) if out_dir is not None else Path(snapshot_path).parent
    out.mkdir(parents=True, exist_ok=True)
    world = snap.world
    motivated = snap.config.world.motivation_mode == ENABLED
    summary = population_classification(world.genomes, motivated)
    with open(out / "probe.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(PROBE_HEADER)
        if summary:
            for agent_id, c in zip(world.ids.tolist(), summary.classifications):
                w.writerow([agent_id, c.label, int(c.rule1), int(c.rule2), int(c.rule3),
                            int(c.mating_suppressed_when_hungry)])
    lines = [f"snapshot: {snapshot_path}", f"iteration: {snap.iteration}",
             f"motivation: {'on' if motivated else 'off'}"]
    if summary is None:
        lines.append("no agents")
    else:
        lines.append(f"agents: {summary.n_agents}")
        for label in LABELS:
            lines.append(f"{label}: {summary.fractions[label]:.4f}")
        lines.append(f"mating_suppressed_when_hungry: {summary.mating_suppressed_fraction:.4f}")
        lines.append(f"majority: {summary.majority_label}")
    text = "\n".join(lines) + "\n"
    (out / "probe_summary.txt").write_text(text, encoding="utf-8")
    return text


MODE_FLAGS = {"on": ENABLED, "off": SUPPRESSED, ENABLED: ENABLED, SUPPRESSED: SUPPRESSED}


def default_jobs() -> int:
    return max(1, min(os.cpu_count() or 1, 8))
