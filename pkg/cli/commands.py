import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple
import pandas as pd
from instance.generators import gen_example1, gen_kvv_window, gen_random, gen_random_usage
from instance.schema import Instance, DeterministicUsage
from instance.storage import load, save, dumps
from offline.brute_force import brute_force_opt
from offline.lp import build_lp, dump_lp, lp_upper_bound
from offline.schema import OfflineResult
from analysis.audit import audit_instance
from analysis.scan import structural_scan
from bounds.minimize import min_f, beta_sweep, best_beta
from bounds.plot import plot_fig1
from fluid.availability import eta_dp, eta_mc
from policies.registry import PolicyRegistry
from policies.seeded import requires_shared_d
from cli.stats import RunStats, run_policy
from util.errors import UsageModelMismatch
from util.logger import logger

RUN_COLUMNS = ["instance", "policy", "beta", "trials", "root_seed", "mean", "se", "min", "max",
               "opt", "lp", "ratio_opt", "ratio_lp"]
COMPARE_COLUMNS = ["instance", "policy", "mean", "se", "baseline", "baseline_value", "ratio", "note"]
AUDIT_COLUMNS = ["instance", "i", "t", "N", "mean", "se", "target", "verdict"]
ETA_COLUMNS = ["resource", "arrival", "time", "eta", "eta_mc", "se"]
SCAN_COLUMNS = ["instance", "i", "t", "grid", "z1", "z2", "critical_at_one", "conditional_mean",
                "combined_bound", "violations"]

EXIT_OK = 0
EXIT_FAIL = 1

NO_BENCHMARK = "no offline benchmark for stochastic usage"


def emit_table(table: pd.DataFrame, out: Optional[str], as_json: bool, header: Optional[Dict[str, Any]] = None):
    """CSV (header row always) or JSON records, to a file or stdout."""
    if as_json:
        text = json.dumps({"defaults": header or {}, "rows": json.loads(table.to_json(orient="records"))}, indent=2)
    else:
        lines = [f"# {k}={v}" for k, v in (header or {}).items()]
        text = "".join(line + "\n" for line in lines) + table.to_csv(index=False)
    if out:
        with open(out, "w") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"wrote {out}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_gen(family: str, params: Dict[str, Any], out: Optional[str]) -> Instance:
    if family == "example1":
        instance = gen_example1(params["d"], params["gap_small"], params["gap_large"])
    elif family == "kvv":
        instance = gen_kvv_window(params["n"], params["blocks"], params["d"],
                                  permute=params.get("permute", True), rng_seed=params.get("seed", 0))
    elif family == "random":
        instance = gen_random(
            params["n_resources"], params["n_arrivals"], params["edge_prob"], params["horizon"], params["d"],
            reward_range=params.get("reward_range", (1.0, 1.0)), rng_seed=params.get("seed", 0),
        )
        max_atoms = params.get("usage_atoms", 0)
        if max_atoms:
            resources = [
                r.model_copy(update={"usage": gen_random_usage(max_atoms, params["d"], rng_seed=[params.get("seed", 0), r.id])})
                for r in instance.resources
            ]
            instance = instance.model_copy(update={"resources": resources})
    else:
        raise ValueError(f"unknown family {family!r}")

    if out:
        save(instance, out)
    else:
        sys.stdout.write(dumps(instance))
    logger.info(f"{instance.label()}: {instance.n_resources} resources, {instance.n_arrivals} arrivals, "
                f"{len(instance.edges())} edges, shared d={instance.shared_d()}")
    return instance


def offline_baselines(instance: Instance, cfg: Dict[str, Any], exact: bool = True) -> Dict[str, Optional[OfflineResult]]:
    """Brute force and LP for deterministic usage; both None otherwise.

    exact=False skips the brute force and leaves "opt" as None.
    """
    if any(not isinstance(instance.usage_of(r.id), DeterministicUsage) for r in instance.resources):
        logger.warning(f"{instance.label()}: {NO_BENCHMARK}")
        return {"opt": None, "lp": None}
    if not exact:
        return {"opt": None, "lp": lp_upper_bound(instance, **cfg["simplex"])}
    opt = brute_force_opt(instance, cap=int(cfg["brute_force_cap"]))
    logger.log_offline(instance.label(), opt)
    lp = lp_upper_bound(instance, **cfg["simplex"])
    logger.log_offline(instance.label(), lp)
    return {"opt": opt if opt.ok else None, "lp": lp}


def _ratio(value: float, base: Optional[float]) -> Optional[float]:
    if base is None:
        return None
    if base == 0:
        return 1.0 if value == 0 else math.inf
    return value / base


def cmd_run(instance: Instance, policy: str, cfg: Dict[str, Any], baselines: bool = False) -> RunStats:
    stats = run_policy(instance, policy, cfg["beta"], cfg["trials"], cfg["root_seed"], cfg["workers"])
    if baselines:
        base = offline_baselines(instance, cfg)
        opt, lp = base["opt"], base["lp"]
        stats = stats.model_copy(update={
            "opt": opt.value if opt else None,
            "lp": lp.value if lp else None,
            "ratio_opt": _ratio(stats.mean, opt.value if opt else None),
            "ratio_lp": _ratio(stats.mean, lp.value if lp else None),
        })
    return stats


def run_table(stats: Sequence[RunStats]) -> pd.DataFrame:
    rows = [{"instance": s.instance_id, **s.model_dump(exclude={"instance_id"})} for s in stats]
    return pd.DataFrame(rows, columns=RUN_COLUMNS)


def _compare_baseline(instance: Instance, baseline: str, cfg: Dict[str, Any]) -> Tuple[Optional[float], str, str]:
    """(value, baseline actually used, note) for one compare instance."""
    base = offline_baselines(instance, cfg, exact=baseline == "opt")
    if base["lp"] is None:
        return None, baseline, NO_BENCHMARK
    if baseline != "opt":
        return base["lp"].value, "lp", ""
    if base["opt"] is None:
        logger.warning(f"{instance.label()}: brute force too large, falling back to LP")
        return base["lp"].value, "lp", "too large for exact; LP used"
    return base["opt"].value, "opt", ""


def cmd_compare(instances: Sequence[Instance], policies: Sequence[str], baseline: str, cfg: Dict[str, Any]) -> pd.DataFrame:
    """One row per (instance, policy) plus a WORST footer row per policy."""
    rows = []
    for instance in instances:
        value, used, note = _compare_baseline(instance, baseline, cfg)
        for key in policies:
            row = {
                "instance": instance.label(),
                "policy": key,
                "mean": None,
                "se": None,
                "baseline": used,
                "baseline_value": value,
                "ratio": None,
                "note": note,
            }
            if requires_shared_d(PolicyRegistry.get_policy(key, cfg["beta"])) and instance.shared_d() is None:
                skipped = f"skipped: {key} requires deterministic shared d"
                logger.warning(f"{instance.label()}: {skipped}")
                row["note"] = "; ".join(part for part in (note, skipped) if part)
            else:
                stats = run_policy(instance, key, cfg["beta"], cfg["trials"], cfg["root_seed"], cfg["workers"])
                row.update(mean=stats.mean, se=stats.se, ratio=_ratio(stats.mean, value))
            rows.append(row)

    table = pd.DataFrame(rows, columns=COMPARE_COLUMNS)
    footer = []
    for key in policies:
        part = table[table["policy"] == key]
        worst = part.loc[part["ratio"].astype(float).idxmin()] if part["ratio"].notna().any() else None
        footer.append({
            "instance": "WORST",
            "policy": key,
            "mean": None if worst is None else worst["mean"],
            "se": None if worst is None else worst["se"],
            "baseline": baseline,
            "baseline_value": None,
            "ratio": None if worst is None else worst["ratio"],
            "note": "" if worst is None else f"at {worst['instance']}",
        })
    return pd.concat([table, pd.DataFrame(footer, columns=COMPARE_COLUMNS)], ignore_index=True)


def cmd_audit(instance: Instance, cfg: Dict[str, Any], samples: int) -> pd.DataFrame:
    reports = audit_instance(instance, cfg["beta"], cfg["alpha"], samples, cfg["root_seed"], cfg["workers"])
    rows = [{
        "instance": r.instance_id, "i": r.resource, "t": r.arrival, "N": r.samples,
        "mean": r.mean, "se": r.se, "target": r.target, "verdict": str(r.verdict),
    } for r in reports]
    failed = sum(1 for r in reports if str(r.verdict) != "pass")
    logger.info(f"{instance.label()}: audited {len(reports)} edges, {failed} failed")
    return pd.DataFrame(rows, columns=AUDIT_COLUMNS)


def cmd_bounds(cfg: Dict[str, Any], grid: int, svg: Optional[str], sweep: bool) -> Dict[str, Any]:
    report = min_f(cfg["beta"], grid, cfg["bounds_refine_iters"], cfg["bounds_samples"])
    payload: Dict[str, Any] = {"alpha": cfg["alpha"], "report": report.model_dump(exclude={"curve_x", "curve_y"})}
    if sweep:
        table = beta_sweep(grid=grid, refine_iters=cfg["bounds_refine_iters"])
        payload["sweep"] = json.loads(table.to_json(orient="records"))
        payload["best_beta"] = best_beta(table)
    if svg:
        payload["svg"] = plot_fig1(cfg["beta"], cfg["bounds_samples"], svg)
    payload["passed"] = report.minimum >= cfg["alpha"]
    return payload


def cmd_eta(instance: Instance, cfg: Dict[str, Any], resource: Optional[int], monte_carlo: bool) -> pd.DataFrame:
    adjacency = instance.adjacency()
    resources = [resource] if resource is not None else sorted(adjacency)
    rows = []
    for i in resources:
        if i not in adjacency:
            raise ValueError(f"unknown resource {i}")
        times = [instance.arrivals[k].time for k in adjacency[i]]
        exact = eta_dp(instance.usage_of(i), times)
        mc = eta_mc(instance.usage_of(i), times, int(cfg["eta_mc_samples"]), [cfg["root_seed"], i]) if monte_carlo and times else None
        for k, tau in enumerate(adjacency[i]):
            rows.append({
                "resource": i,
                "arrival": tau,
                "time": exact.times[k],
                "eta": exact.eta[k],
                "eta_mc": mc.eta[k] if mc else None,
                "se": mc.se[k] if mc else None,
            })
    return pd.DataFrame(rows, columns=ETA_COLUMNS)


def cmd_scan(instance: Instance, cfg: Dict[str, Any], edges: List[tuple], trial: int, grid: int) -> pd.DataFrame:
    if instance.shared_d() is None:
        raise UsageModelMismatch("scan requires deterministic shared d")
    rows = []
    for i, t in edges:
        report = structural_scan(
            instance, (i, t), beta=cfg["beta"], grid_size=grid, root=cfg["root_seed"], trial=trial,
            y2_samples=cfg["scan_y2_samples"], joint_grid=cfg["scan_joint_grid"],
        )
        rows.append({
            "instance": report.instance_id, "i": i, "t": t, "grid": report.grid,
            "z1": report.z1, "z2": report.z2, "critical_at_one": report.critical_at_one,
            "conditional_mean": report.conditional_mean, "combined_bound": report.combined_bound,
            "violations": len(report.violations),
        })
    return pd.DataFrame(rows, columns=SCAN_COLUMNS)


def cmd_dump_lp(instance: Instance, path: str) -> str:
    dump_lp(build_lp(instance), path)
    logger.info(f"wrote LP model of {instance.label()} to {path}")
    return path


def load_instances(paths: Sequence[str]) -> List[Instance]:
    return [load(p) for p in paths]
