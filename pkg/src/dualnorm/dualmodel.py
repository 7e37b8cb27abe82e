"""Finite truncations of a unitary dual, and matrix fields over them.

A :class:`DualModel` is an ordered list of ``(label, dim)`` entries standing
for the first few irreducible-representation classes of a compact group; a
:class:`Field` assigns a square ``dim x dim`` complex block to each entry.
Presets cover the torus (all dims 1), truncated SU(2) (dims 1..N) and the
symmetric group S3 (dims 1, 1, 2).

Both types are immutable; field arithmetic returns new fields.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import matcore

__all__ = [
    "DualModel",
    "Field",
    "preset_dual",
    "parse_dual_arg",
    "zero_field",
    "identity_field",
    "random_field",
    "field_adjoint",
    "field_abs",
    "field_lincomb",
    "field_product",
    "encode_model",
    "decode_model",
    "encode_field",
    "decode_field",
    "mix_seed",
]

DISTRIBUTIONS = ("ginibre", "hermitian", "psd")


@dataclass(frozen=True)
class DualModel:
    """Ordered, labeled truncation of a unitary dual: ``(label, dim)`` pairs."""

    name: str
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a dual model needs at least one entry")
        labels = [lab for lab, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("entry labels must be unique")
        for lab, dim in self.entries:
            if dim < 1:
                raise ValueError(f"entry {lab!r} has non-positive dim {dim}")
        object.__setattr__(self, "entries", tuple((str(l), int(d)) for l, d in self.entries))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def preset_dual(kind: str, arg=None) -> DualModel:
    """Build a preset dual model.

    kind: "torus" (arg = number of 1-dim entries), "su2_trunc" (arg = max
    dim, entries of dims 1..arg), "s3" (dims 1, 1, 2), or "custom"
    (arg = iterable of dims).
    """
    if kind == "torus":
        n = int(arg)
        if n < 1:
            raise ValueError("torus preset needs at least one entry")
        return DualModel("torus(%d)" % n, tuple((f"k{i}", 1) for i in range(n)))
    if kind == "su2_trunc":
        n = int(arg)
        if n < 1:
            raise ValueError("su2_trunc preset needs max dim >= 1")
        return DualModel("su2_trunc(%d)" % n, tuple((f"d{d}", d) for d in range(1, n + 1)))
    if kind == "s3":
        return DualModel("s3", (("triv", 1), ("sgn", 1), ("std", 2)))
    if kind == "custom":
        dims = [int(d) for d in arg]
        if not dims:
            raise ValueError("custom preset needs a non-empty dim list")
        name = "custom(%s)" % ",".join(str(d) for d in dims)
        return DualModel(name, tuple((f"e{i}d{d}", d) for i, d in enumerate(dims)))
    raise ValueError(f"unknown dual preset kind {kind!r}")


def parse_dual_arg(text: str) -> DualModel:
    """Parse a preset string like "torus(4)", "su2_trunc(3)", "s3", "custom(1,2,2)"."""
    text = text.strip()
    try:
        if "(" in text:
            if not text.endswith(")"):
                raise ValueError("missing closing parenthesis")
            kind, _, inner = text[:-1].partition("(")
            if kind == "custom":
                return preset_dual("custom", [s for s in inner.split(",") if s])
            return preset_dual(kind, inner)
        return preset_dual(text)
    except ValueError as exc:
        raise ValueError(f"malformed dual preset {text!r}: {exc}") from exc


@dataclass(frozen=True)
class Field:
    """One square complex block per dual-model entry."""

    model: DualModel
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.model):
            raise ValueError(
                f"field has {len(self.blocks)} blocks for {len(self.model)} entries"
            )
        frozen = []
        for (lab, dim), b in zip(self.model.entries, self.blocks):
            b = matcore.cmatrix(b)
            if b.shape != (dim, dim):
                raise ValueError(f"block for {lab!r} has shape {b.shape}, expected {(dim, dim)}")
            b = b.copy()  # private buffer: callers keep their arrays writable
            b.flags.writeable = False
            frozen.append(b)
        object.__setattr__(self, "blocks", tuple(frozen))

    def map_blocks(self, fn) -> "Field":
        return Field(self.model, tuple(fn(b) for b in self.blocks))

    def __add__(self, other: "Field") -> "Field":
        _check_same_model(self, other)
        return Field(self.model, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "Field") -> "Field":
        _check_same_model(self, other)
        return Field(self.model, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "Field":
        return self.map_blocks(lambda b: -b)

    def __rmul__(self, alpha: complex) -> "Field":
        return self.map_blocks(lambda b: alpha * b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return self.model == other.model and all(
            np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)
        )


def _check_same_model(a: Field, b: Field) -> None:
    if a.model != b.model:
        raise ValueError("fields live over different dual models")


def zero_field(model: DualModel) -> Field:
    return Field(model, tuple(np.zeros((d, d), dtype=np.complex128) for d in model.dims))


def identity_field(model: DualModel) -> Field:
    return Field(model, tuple(np.eye(d, dtype=np.complex128) for d in model.dims))


def random_field(model: DualModel, seed: int, dist: str = "ginibre") -> Field:
    """Deterministic random field: one rng stream per (model, seed, dist).

    ginibre: i.i.d. standard complex normal entries (unit E|z|^2);
    hermitian: Hermitian part (A + A*)/2 of a ginibre draw;
    psd: A* A of a ginibre draw.
    """
    if dist not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {dist!r}")
    rng = np.random.default_rng(seed)
    blocks = []
    for d in model.dims:
        a = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
        if dist == "hermitian":
            a = (a + a.conj().T) / 2
        elif dist == "psd":
            a = a.conj().T @ a
        blocks.append(a)
    return Field(model, tuple(blocks))


def field_adjoint(h: Field) -> Field:
    return h.map_blocks(matcore.adjoint)


def field_abs(h: Field) -> Field:
    return h.map_blocks(matcore.matabs)


def field_lincomb(alpha: complex, h1: Field, beta: complex, h2: Field) -> Field:
    _check_same_model(h1, h2)
    return Field(
        h1.model, tuple(alpha * a + beta * b for a, b in zip(h1.blocks, h2.blocks))
    )


def field_product(h1: Field, h2: Field) -> Field:
    _check_same_model(h1, h2)
    return Field(h1.model, tuple(a @ b for a, b in zip(h1.blocks, h2.blocks)))


# -- JSON wire formats ------------------------------------------------------
#
# DualModel: {"name": str, "entries": [{"label": str, "dim": int}, ...]}
# Field:     {"model": str, "blocks": [[[[re, im], ...] ...] ...]}
#            (blocks > rows > complex entries as [re, im] pairs)


def encode_model(model: DualModel) -> dict:
    return {
        "name": model.name,
        "entries": [{"label": lab, "dim": dim} for lab, dim in model.entries],
    }


def decode_model(data: dict) -> DualModel:
    try:
        entries = tuple((e["label"], int(e["dim"])) for e in data["entries"])
        return DualModel(str(data["name"]), entries)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed dual-model document: {exc}") from exc


def encode_field(field: Field) -> dict:
    blocks = [
        [[[z.real, z.imag] for z in row] for row in block.tolist()]
        for block in field.blocks
    ]
    return {"model": field.model.name, "blocks": blocks}


def decode_field(data: dict, model: DualModel) -> Field:
    if data.get("model") != model.name:
        raise ValueError(
            f"field document is for model {data.get('model')!r}, expected {model.name!r}"
        )
    blocks = []
    try:
        for raw in data["blocks"]:
            blocks.append(np.array([[complex(re, im) for re, im in row] for row in raw]))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed field document: {exc}") from exc
    return Field(model, tuple(blocks))


def mix_seed(*parts) -> int:
    """Mix strings/ints into a 64-bit seed, stable across runs and platforms."""
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, (int, np.integer)):
            h.update(b"i" + int(part).to_bytes(16, "little", signed=True))
        else:
            h.update(b"s" + str(part).encode("utf-8"))
        h.update(b"\x00")
    return int.from_bytes(h.digest(), "little")
