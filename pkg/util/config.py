import os
import yaml
from util.logger import logger
from typing import Dict, Any

DEFAULT_CONFIG_PATH = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "config", "default.yaml"))

# Built-in fallbacks, overridden by the YAML file and then by command line flags
DEFAULTS: Dict[str, Any] = {
    "beta": 0.89,
    "alpha": 0.589,
    "trials": 1000,
    "audit_trials": 20000,
    "root_seed": 0,
    "scan_grid": 512,
    "scan_y2_samples": 4,
    "scan_joint_grid": 32,
    "bounds_grid": 1024,
    "bounds_refine_iters": 40,
    "bounds_samples": 1000,
    "brute_force_cap": 100_000_000,
    "simplex": {
        "feasibility_tol": 1e-9,
        "optimality_tol": 1e-9,
        "max_iterations": 50_000,
        "refactor_every": 50,
    },
    "eta_mc_samples": 100_000,
    "workers": 1,
    "log_level": "INFO",
    "random": {
        "n_resources": 4,
        "n_arrivals": 12,
        "edge_prob": 0.5,
        "horizon": 40,
        "d": 10,
        "reward_range": [1.0, 1.0],
    },
}


class ConfigParser:
    """Manages configuration loading and validation."""

    def __init__(self, args):
        """Initialize the configuration manager."""
        self.config_path = getattr(args, "config", None) or DEFAULT_CONFIG_PATH
        self.args = args
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file and apply overrides."""
        cfg = {}
        try:
            with open(self.config_path, 'r') as f:
                logger.debug(f"Loading configuration from {self.config_path}")
                cfg = yaml.safe_load(f) or {}
        except FileNotFoundError:
            raise ValueError(f"Configuration file not found: {self.config_path}")
        except yaml.YAMLError as e:
            raise ValueError(f"Error parsing configuration file: {e}")

        merged = _merge(DEFAULTS, cfg)

        # command line flags win over the file
        for key in ("beta", "alpha", "trials", "root_seed", "workers", "log_level"):
            value = getattr(self.args, key, None)
            if value is not None:
                merged[key] = value

        # environment override for worker count only
        env_workers = os.environ.get("RERANK_WORKERS")
        if env_workers and getattr(self.args, "workers", None) is None:
            try:
                merged["workers"] = int(env_workers)
            except ValueError:
                raise ValueError(f"RERANK_WORKERS must be an integer, got {env_workers!r}")

        if not 0 < merged["beta"] <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {merged['beta']}")
        if int(merged["root_seed"]) < 0:
            raise ValueError(f"root_seed must be nonnegative, got {merged['root_seed']}")

        return merged

    def get_config(self) -> Dict[str, Any]:
        """Get the configuration."""
        return self.config


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out
