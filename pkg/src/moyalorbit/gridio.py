"""Grid binary format and JSON serialization helpers.

The .moya format: a 16-byte header (magic "MOYA", u8 version, u8 dim,
u16 N, f32 L, 4 pad bytes, all little-endian) followed by N^d complex
float64 values, row-major.  A JSON sidecar <path>.json carries the grid
spec, the skew form, and theta.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from moyalorbit.covariance import FiberedFunction, GroupSample
from moyalorbit.geometry import LorentzTransform, SkewForm, Spacetime
from moyalorbit.grids import GridFunction, GridSpec

MAGIC = b"MOYA"
VERSION = 1
_HEADER = "<4sBBHf4x"  # magic, version, dim, N, L, pad


class FormatError(ValueError):
    """Raised on a malformed .moya file or mismatched sidecar."""


def write_grid(path, f: GridFunction, sigma: SkewForm | None = None) -> None:
    path = Path(path)
    spec = f.spec
    header = struct.pack(_HEADER, MAGIC, VERSION, spec.dim, spec.n, spec.length)
    data = np.ascontiguousarray(f.values, dtype="<c16").tobytes()
    path.write_bytes(header + data)
    sidecar = {
        "dim": spec.dim,
        "n": spec.n,
        "length": spec.length,
        "theta": spec.theta,
    }
    if sigma is not None:
        sidecar["sigma"] = sigma.to_json()
    path.with_suffix(path.suffix + ".json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=1) + "\n"
    )


def read_grid(path) -> tuple:
    """Returns (GridFunction, sigma-or-None)."""
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < 16:
        raise FormatError("file too short for a .moya header")
    magic, version, dim, n, length = struct.unpack(_HEADER, raw[:16])
    if magic != MAGIC:
        raise FormatError("bad magic; not a .moya file")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    theta = 1.0
    sigma = None
    sidecar_path = path.with_suffix(path.suffix + ".json")
    if sidecar_path.exists():
        sidecar = json.loads(sidecar_path.read_text())
        theta = float(sidecar.get("theta", 1.0))
        if "sigma" in sidecar:
            sigma = SkewForm(np.asarray(sidecar["sigma"]))
    # header L is f32; round back to a clean double
    spec = GridSpec(dim=dim, n=n, length=float(np.float32(length)), theta=theta)
    count = spec.size
    if len(raw) - 16 != 16 * count:
        raise FormatError(f"expected {16 * count} payload bytes, found {len(raw) - 16}")
    values = np.frombuffer(raw[16:], dtype="<c16")
    return GridFunction(spec, values.reshape((n,) * dim).copy()), sigma


def write_fibered(dirpath, f: FiberedFunction, spacetime: Spacetime, sigma0: SkewForm) -> None:
    """A FiberedFunction bundles as transforms.json + fiber_k.moya files."""
    dirpath = Path(dirpath)
    dirpath.mkdir(parents=True, exist_ok=True)
    meta = {
        "metric": list(spacetime.metric),
        "bounded_flag": f.sample.bounded_flag,
        "bound": f.sample.bound,
        "transforms": [t.to_json() for t in f.sample.transforms],
    }
    (dirpath / "transforms.json").write_text(
        json.dumps(meta, sort_keys=True, indent=1) + "\n"
    )
    for k, fib in enumerate(f.fibers):
        write_grid(dirpath / f"fiber_{k}.moya", fib, sigma0)


def read_fibered(dirpath, spacetime: Spacetime) -> FiberedFunction:
    dirpath = Path(dirpath)
    meta = json.loads((dirpath / "transforms.json").read_text())
    transforms = tuple(
        LorentzTransform(np.asarray(m), spacetime) for m in meta["transforms"]
    )
    sample = GroupSample(transforms, meta["bounded_flag"], meta["bound"])
    fibers = tuple(
        read_grid(dirpath / f"fiber_{k}.moya")[0] for k in range(len(transforms))
    )
    return FiberedFunction(sample, fibers)
