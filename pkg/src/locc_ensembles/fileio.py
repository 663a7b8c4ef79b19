"""JSON encodings of states and channels.

Real numbers are written as decimal strings with 17 significant digits,
which round-trips every double exactly. Readers also accept plain JSON
numbers.

StateFile::

    {"dims": [dA, dB], "amplitudes": [[re, im], ...]}

ChannelFile::

    {"dims_in": [dA, dB], "dims_out": [dA', dB'],
     "kraus": [{"a": Matrix, "b": Matrix}, ...]}

    Matrix = {"rows": R, "cols": C, "entries": [[re, im], ...]}  # row-major
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import SeparableChannel
from .errors import InputError, LoccError
from .states import PureState


class FormatError(LoccError, ValueError):
    """Malformed or inconsistent file content."""


def encode_real(x: float) -> str:
    return format(float(x), ".17g")


def encode_complex(z: complex) -> list[str]:
    z = complex(z)
    return [encode_real(z.real), encode_real(z.imag)]


def _real(x) -> float:
    if isinstance(x, bool) or not isinstance(x, (str, int, float)):
        raise FormatError(f"expected a number or numeric string, got {x!r}")
    try:
        v = float(x)
    except ValueError:
        raise FormatError(f"not a number: {x!r}") from None
    if not np.isfinite(v):
        raise FormatError(f"non-finite value {x!r}")
    return v


def _complex_list(entries, n: int, what: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != n:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise FormatError(f"{what}: expected {n} [re, im] pairs, got {got}")
    out = np.empty(n, dtype=complex)
    for i, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError(f"{what}[{i}]: expected [re, im], got {e!r}")
        out[i] = complex(_real(e[0]), _real(e[1]))
    return out


def _dims(obj, key: str) -> tuple[int, int]:
    d = obj.get(key) if isinstance(obj, dict) else None
    if (not isinstance(d, list) or len(d) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in d)):
        raise FormatError(f"{key!r} must be a list of two positive integers, got {d!r}")
    return d[0], d[1]


def encode_matrix(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]),
            "entries": [encode_complex(z) for z in m.reshape(-1)]}


def decode_matrix(obj, what: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError(f"{what}: expected an object")
    rows, cols = obj.get("rows"), obj.get("cols")
    if not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in (rows, cols)):
        raise FormatError(f"{what}: rows/cols must be positive integers")
    return _complex_list(obj.get("entries"), rows * cols, f"{what}.entries").reshape(rows, cols)


def state_to_dict(psi: PureState) -> dict:
    return {"dims": [psi.dA, psi.dB],
            "amplitudes": [encode_complex(z) for z in psi.amplitudes]}


def state_from_dict(obj) -> PureState:
    dA, dB = _dims(obj, "dims")
    amps = _complex_list(obj.get("amplitudes"), dA * dB, "amplitudes")
    try:
        return PureState(dA, dB, amps)
    except InputError as exc:
        raise FormatError(f"invalid state: {exc}") from exc


def channel_to_dict(ch: SeparableChannel) -> dict:
    return {"dims_in": list(ch.dims_in), "dims_out": list(ch.dims_out),
            "kraus": [{"a": encode_matrix(a), "b": encode_matrix(b)} for a, b in ch.kraus]}


def channel_from_dict(obj, unchecked: bool = True) -> SeparableChannel:
    """Decode a channel; by default defective channels are admitted
    (``unchecked``) so their defect can be reported."""
    dims_in = _dims(obj, "dims_in")
    dims_out = _dims(obj, "dims_out")
    kraus = obj.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise FormatError("'kraus' must be a non-empty list")
    pairs = []
    for n, pair in enumerate(kraus):
        if not isinstance(pair, dict):
            raise FormatError(f"kraus[{n}]: expected an object with keys 'a' and 'b'")
        pairs.append((decode_matrix(pair.get("a"), f"kraus[{n}].a"),
                      decode_matrix(pair.get("b"), f"kraus[{n}].b")))
    try:
        return SeparableChannel(dims_in, dims_out, tuple(pairs), unchecked=unchecked)
    except (InputError, ValueError) as exc:
        raise FormatError(f"invalid channel: {exc}") from exc


def _read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def read_state(path) -> PureState:
    return state_from_dict(_read_json(path))


def write_state(psi: PureState, path) -> None:
    write_json(state_to_dict(psi), path)


def read_channel(path, unchecked: bool = True) -> SeparableChannel:
    return channel_from_dict(_read_json(path), unchecked)


def write_channel(ch: SeparableChannel, path) -> None:
    write_json(channel_to_dict(ch), path)
