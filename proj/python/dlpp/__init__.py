"""Dynamic load planning for a parcel terminal.

Thin wrappers over the C++ core; plans and reports come back as dicts.
"""

import json

from ._dlpp import (
    DlppError,
    Instance,
    ValidationError,
    brute_force_cost,
    fixture_splitting,
    fixture_t1,
    normalized_distance,
    perturb,
    plan_cost,
    restrict_scenario,
    shifted_geomean,
    synthetic_terminal,
    total_variation,
)
from . import _dlpp

__all__ = [
    "DlppError",
    "Instance",
    "ValidationError",
    "brute_force_cost",
    "evaluate",
    "fixture_splitting",
    "fixture_t1",
    "generate_dataset",
    "load_instance",
    "normalized_distance",
    "perturb",
    "plan_cost",
    "restrict_scenario",
    "shifted_geomean",
    "solve",
    "synthetic_terminal",
    "total_variation",
    "train",
]


def load_instance(source):
    """Instance from a JSON string, a dict or a file path."""
    if isinstance(source, dict):
        return Instance.from_json(json.dumps(source))
    text = str(source)
    if text.lstrip().startswith("{"):
        return Instance.from_json(text)
    return Instance.from_file(text)


def solve(instance, mode="mip", time_limit=30.0, node_limit=0, model=None):
    """Plan dict with y, x and objective. `model` is a checkpoint string from train()."""
    return json.loads(_dlpp._solve(instance, mode, float(time_limit), int(node_limit), model or ""))


def generate_dataset(reference, n, seed, out_dir, jobs=1):
    """Writes a labeled dataset to out_dir; returns the number of failed labels."""
    return _dlpp._generate_dataset(reference, int(n), int(seed), str(out_dir), int(jobs))


def train(data_dir, seed, epochs=150, learning_rate=1e-2, layers=3, hidden=128):
    """Trains on the train split and returns the best checkpoint as a JSON string."""
    return _dlpp._train(str(data_dir), int(seed), int(epochs), float(learning_rate), int(layers), int(hidden))


def evaluate(data_dir, methods=("gdo", "proxy"), model=None):
    """Per-method geometric-mean summary on the test split."""
    return json.loads(_dlpp._evaluate(str(data_dir), list(methods), model or ""))
