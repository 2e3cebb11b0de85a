"""Benchmark harness: random k-connected instances, solver vs. exhaustive oracle."""
from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .connectivity import is_k_connected
from .errors import ValidationError
from .pipeline import DEFAULT_ORACLE_CAP, ProblemSpec, exact_kmcds, solve_kmcds
from .udg import UnitDiskGraph, random_instance

COLUMNS = [
    "instance", "seed", "n", "edges", "side", "k", "m", "ds", "skcs",
    "weight", "ds_weight", "added_weight", "feasible", "rung", "extraction_ok",
    "oracle_weight", "ratio", "cost_slack", "solution",
]


@dataclass
class BenchConfig:
    count: int = 10
    n_min: int = 8
    n_max: int = 12
    ks: list[int] = field(default_factory=lambda: [2])
    m_offsets: list[int] = field(default_factory=lambda: [0])
    seed: int = 0
    side: float | None = None
    weight_lo: float = 1.0
    weight_hi: float = 10.0
    ds: str = "greedy"
    skcs: str = "augment"
    oracle_cap: int = 12
    max_attempts: int = 1000
    jobs: int = 1

    def validate(self) -> None:
        if self.count < 1:
            raise ValidationError("count must be >= 1")
        if not 1 <= self.n_min <= self.n_max:
            raise ValidationError("need 1 <= n_min <= n_max")
        if not self.ks or any(k < 1 for k in self.ks):
            raise ValidationError("ks must be a nonempty list of integers >= 1")
        if any(d < 0 for d in self.m_offsets):
            raise ValidationError("m offsets must be >= 0 (the solver assumes m >= k)")
        if self.side is not None and not self.side > 0:
            raise ValidationError("side must be positive")
        if not 0 <= self.weight_lo <= self.weight_hi:
            raise ValidationError("need 0 <= weight_lo <= weight_hi")
        if self.oracle_cap > DEFAULT_ORACLE_CAP + 6:
            raise ValidationError(f"oracle cap above {DEFAULT_ORACLE_CAP + 6} is impractical")

    @classmethod
    def from_dict(cls, doc: dict) -> BenchConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ValidationError(f"unknown config keys {sorted(unknown)}")
        return cls(**doc)


def auto_side(n: int, k: int) -> float:
    """Square side giving a nominal mean degree of 6 + 2k (boundary effects ignored)."""
    return math.sqrt(math.pi * n / (6 + 2 * k))


def k_connected_instance(
    n: int, k: int, seed: int, side: float | None = None,
    weight_range: tuple[float, float] = (1.0, 10.0), max_attempts: int = 1000,
) -> tuple[UnitDiskGraph, int, float]:
    """First k-connected draw among seeds derived from ``seed``; returns (graph, seed used, side)."""
    side = side if side is not None else auto_side(n, k)
    rng = random.Random(seed)
    for _ in range(max_attempts):
        s = rng.getrandbits(48)
        g = random_instance(n, side, weight_range, s)
        if is_k_connected(g, k):
            return g, s, side
    raise ValidationError(f"no {k}-connected instance with n={n}, side={side:.3f} in {max_attempts} draws")


def _jobs(cfg: BenchConfig) -> list[tuple]:
    out = []
    for k in cfg.ks:
        for off in cfg.m_offsets:
            m = k + off
            for i in range(cfg.count):
                rng = random.Random(f"{cfg.seed}/{k}/{m}/{i}")
                n = rng.randint(cfg.n_min, cfg.n_max)
                out.append((f"k{k}m{m}-{i:04d}", rng.getrandbits(48), n, k, m))
    return out


def run_instance(cfg: BenchConfig, job: tuple) -> dict:
    name, seed, n, k, m = job
    g, used, side = k_connected_instance(
        n, k, seed, cfg.side, (cfg.weight_lo, cfg.weight_hi), cfg.max_attempts
    )
    report = solve_kmcds(ProblemSpec(g, k, m, ds=cfg.ds, skcs=cfg.skcs))
    if n <= cfg.oracle_cap:
        report.attach_oracle(*exact_kmcds(g, k, m, cap=cfg.oracle_cap))
    pc = report.phase_connect
    return {
        "instance": name,
        "seed": used,
        "n": n,
        "edges": g.num_edges,
        "side": side,
        "k": k,
        "m": m,
        "ds": cfg.ds,
        "skcs": cfg.skcs,
        "weight": report.weight,
        "ds_weight": report.phase_ds["weight"],
        "added_weight": pc["weight"],
        "feasible": report.feasible,
        "rung": report.rung,
        "extraction_ok": pc["extraction_ok"],
        "oracle_weight": report.oracle_weight,
        "ratio": report.empirical_ratio,
        "cost_slack": pc["cost_slack"],
        "solution": " ".join(map(str, report.solution)),
    }


def aggregate(rows: list[dict]) -> list[dict]:
    groups: dict[tuple[int, int], list[dict]] = {}
    for r in rows:
        groups.setdefault((r["k"], r["m"]), []).append(r)
    out = []
    for (k, m), rs in sorted(groups.items()):
        ratios = [r["ratio"] for r in rs if r["ratio"] is not None]
        rungs: dict[str, int] = {}
        for r in rs:
            rungs[r["rung"]] = rungs.get(r["rung"], 0) + 1
        out.append({
            "k": k,
            "m": m,
            "instances": len(rs),
            "feasible": sum(r["feasible"] for r in rs),
            "with_oracle": len(ratios),
            "max_ratio": max(ratios) if ratios else None,
            "mean_ratio": math.fsum(ratios) / len(ratios) if ratios else None,
            "rungs": dict(sorted(rungs.items())),
        })
    return out


def bench(cfg: BenchConfig) -> dict:
    cfg.validate()
    jobs = _jobs(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(run_instance, [cfg] * len(jobs), jobs))
    else:
        rows = [run_instance(cfg, j) for j in jobs]
    return {"config": asdict(cfg), "rows": rows, "aggregates": aggregate(rows)}


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def to_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in result["rows"]:
        w.writerow([_cell(r[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(result: dict) -> str:
    doc = dict(result)
    doc["config"] = {k: v for k, v in result["config"].items() if k != "jobs"}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
