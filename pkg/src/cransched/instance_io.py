"""On-disk formats: instance documents, benefit tensors, and layout tables.

Instances and benefit tensors are JSON with a fixed key layout (see
save_instance / save_benefits); layouts are four-column CSV.  Writers are
byte-deterministic for equal inputs, and values round-trip exactly because
floats are emitted in shortest-round-trip form.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .model import BenefitTensor, Dimensions, Instance
from .simulator import NetworkLayout


def _parse_json(text: str, source: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ValueError(f"{source}: expected a JSON object at top level")
    return doc


def _take(doc: dict, key: str, source: str):
    if key not in doc:
        raise ValueError(f"{source}: missing key {key!r}")
    return doc[key]


def _dims_from(doc: dict, source: str) -> Dimensions:
    d = _take(doc, "dims", source)
    if not isinstance(d, dict):
        raise ValueError(f"{source}: 'dims' must be an object with U, B, Z")
    return Dimensions(
        num_users=_take(d, "U", source + " dims"),
        num_bs=_take(d, "B", source + " dims"),
        num_pz=_take(d, "Z", source + " dims"),
    )


def instance_to_json(inst: Instance) -> str:
    doc = {
        "dims": {
            "U": inst.dims.num_users,
            "B": inst.dims.num_bs,
            "Z": inst.dims.num_pz,
        },
        "power": inst.power.tolist(),
        "gain_sq": inst.gain_sq.tolist(),
        "noise_w": float(inst.noise_w),
        "gamma": float(inst.sinr_gap),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_instance(path: str | Path, inst: Instance) -> None:
    Path(path).write_text(instance_to_json(inst))


def load_instance(path: str | Path) -> Instance:
    source = str(path)
    doc = _parse_json(Path(path).read_text(), source)
    dims = _dims_from(doc, source)
    return Instance(
        dims=dims,
        power=np.asarray(_take(doc, "power", source), dtype=float),
        gain_sq=np.asarray(_take(doc, "gain_sq", source), dtype=float),
        noise_w=float(_take(doc, "noise_w", source)),
        sinr_gap=float(_take(doc, "gamma", source)),
    )


def benefits_to_json(benefits: BenefitTensor) -> str:
    doc = {
        "dims": {
            "U": benefits.dims.num_users,
            "B": benefits.dims.num_bs,
            "Z": benefits.dims.num_pz,
        },
        "a": benefits.a.tolist(),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_benefits(path: str | Path, benefits: BenefitTensor) -> None:
    Path(path).write_text(benefits_to_json(benefits))


def load_benefits(path: str | Path, dims: Dimensions | None = None) -> BenefitTensor:
    """Read a benefit tensor; when dims is given, it must match the file."""
    source = str(path)
    doc = _parse_json(Path(path).read_text(), source)
    file_dims = _dims_from(doc, source)
    if dims is not None and dims != file_dims:
        raise ValueError(f"{source}: tensor is for {file_dims}, expected {dims}")
    return BenefitTensor(file_dims, np.asarray(_take(doc, "a", source), dtype=float))


LAYOUT_HEADER = "entity,type,x_m,y_m"


def layout_to_csv(layout: NetworkLayout) -> str:
    lines = [LAYOUT_HEADER]
    for kind, pts in (("bs", layout.bs_positions), ("user", layout.user_positions)):
        for i, (x, y) in enumerate(pts):
            lines.append(f"{i},{kind},{float(x)!r},{float(y)!r}")
    return "\n".join(lines) + "\n"


def save_layout(path: str | Path, layout: NetworkLayout) -> None:
    Path(path).write_text(layout_to_csv(layout))


def load_bs_positions(path: str | Path) -> np.ndarray:
    """Base-station coordinates from a layout CSV (rows with type 'bs'),
    ordered by their entity index."""
    rows = []
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        missing = {"entity", "type", "x_m", "y_m"} - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{path}: missing layout columns {sorted(missing)}")
        for rec in reader:
            if rec["type"] == "bs":
                rows.append((int(rec["entity"]), float(rec["x_m"]), float(rec["y_m"])))
    if not rows:
        raise ValueError(f"{path}: no base-station rows")
    rows.sort()
    return np.array([(x, y) for _, x, y in rows], dtype=float)
