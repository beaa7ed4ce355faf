"""Published reference values shipped with the package."""

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from .problem import WedgeParams

SOURCES = ("jaya", "pso", "hyperband", "ga", "zhang", "asaithambi")


@dataclass(frozen=True)
class VelocityTable:
    xi: np.ndarray
    reference: np.ndarray
    by_method: dict


@dataclass(frozen=True)
class ReferenceRecord:
    params: WedgeParams
    name: str
    alpha_ref: dict
    eta_inf_ref: Optional[float]
    reported_residual: Optional[str]
    velocity_table: Optional[VelocityTable]

    @classmethod
    def from_json(cls, d):
        table = None
        v = d.get("velocity")
        if v is not None:
            table = VelocityTable(
                xi=np.array(v["xi"], dtype=np.float64),
                reference=np.array(v["reference"], dtype=np.float64),
                by_method={k: np.array(v[k], dtype=np.float64) for k in ("jaya", "pso", "hyperband", "ga") if k in v},
            )
        return cls(
            params=WedgeParams(float(d["beta0"]), float(d["beta"])),
            name=d.get("name", ""),
            alpha_ref={k: float(x) for k, x in d["alpha"].items()},
            eta_inf_ref=float(d["eta_inf"]) if d.get("eta_inf") is not None else None,
            reported_residual=d.get("reported_residual"),
            velocity_table=table,
        )


def _validate(records):
    keys = [r.params for r in records]
    if len(set(keys)) != len(keys):
        raise ValueError("reference records must have unique (beta0, beta)")
    for r in records:
        t = r.velocity_table
        if t is None:
            continue
        if t.xi.shape != t.reference.shape:
            raise ValueError(f"velocity table for {r.params} has mismatched columns")
        if not (np.all(np.diff(t.xi) > 0) and t.xi[0] > 0 and t.xi[-1] <= 1):
            raise ValueError(f"velocity table for {r.params} needs xi strictly increasing in (0, 1]")
    return records


def load_reference(path=None):
    """Reference records, from ``path`` or the packaged data file."""
    if path is None:
        text = resources.files("fskan").joinpath("data/reference.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = json.loads(text)
    return _validate([ReferenceRecord.from_json(d) for d in doc["records"]])


def find(records, beta0, beta):
    for r in records:
        if r.params == (float(beta0), float(beta)):
            return r
    raise KeyError(f"no reference record for beta0={beta0}, beta={beta}")
