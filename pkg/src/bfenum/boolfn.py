"""Boolean functions given by explicit truth tables.

Row convention: a table row index is the argument vector read as a binary
number with argument 1 as the most significant bit.  So for a ternary
function, row 6 is the value at (1, 1, 0).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import (
    ArityMismatch,
    BadThreshold,
    LengthMismatch,
    TooLarge,
    ZeroArity,
)

MAX_ARITY = 16


class PropertyKind(enum.Enum):
    REPRODUCING_0 = "0-reproducing"
    REPRODUCING_1 = "1-reproducing"
    MONOTONE = "monotone"
    AFFINE = "affine"
    SELF_DUAL = "self-dual"
    DISJUNCTION_SHAPE = "disjunction-shape"
    CONJUNCTION_SHAPE = "conjunction-shape"


@dataclass(frozen=True)
class BooleanFunction:
    """An arity and a truth table; the optional name never affects equality."""

    arity: int
    table: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def bits(self) -> str:
        return "".join(str(b) for b in self.table)

    def __repr__(self):
        label = self.name or "fn"
        return f"{label}/{self.arity}:{self.bits()}"


def make_function(arity, table, name=None) -> BooleanFunction:
    """Build a function from a bit string or bit sequence.

    The table must list exactly 2**arity bits, row 0 first.
    """
    if not isinstance(arity, int) or arity < 1:
        raise ZeroArity(f"arity must be a positive integer, got {arity!r}")
    if arity > MAX_ARITY:
        raise TooLarge(f"arity {arity} exceeds the supported maximum {MAX_ARITY}")
    if isinstance(table, str):
        cells = []
        for ch in table:
            if ch not in "01":
                raise LengthMismatch(f"bad table character {ch!r}")
            cells.append(int(ch))
    else:
        cells = list(table)
        for b in cells:
            if b not in (0, 1):
                raise LengthMismatch(f"bad table entry {b!r}")
    if len(cells) != 2 ** arity:
        raise LengthMismatch(
            f"table has {len(cells)} rows, arity {arity} needs {2 ** arity}"
        )
    return BooleanFunction(arity, tuple(cells), name)


def constant_function(value, name=None) -> BooleanFunction:
    """The unary constant, the usual stand-in for a constant in a base."""
    if value not in (0, 1):
        raise LengthMismatch(f"constant value must be 0 or 1, got {value!r}")
    return make_function(1, (value, value), name)


def eval_function(f: BooleanFunction, args) -> int:
    args = tuple(args)
    if len(args) != f.arity:
        raise ArityMismatch(f"{f!r} expects {f.arity} arguments, got {len(args)}")
    idx = 0
    for b in args:
        if b not in (0, 1):
            raise LengthMismatch(f"bad argument bit {b!r}")
        idx = (idx << 1) | b
    return f.table[idx]


def dual(f: BooleanFunction) -> BooleanFunction:
    """Negate the output after negating every input."""
    n = 2 ** f.arity
    table = tuple(1 - f.table[n - 1 - i] for i in range(n))
    name = None if f.name is None else f"dual_{f.name}"
    return BooleanFunction(f.arity, table, name)


def _nonfictive_mask(f: BooleanFunction) -> int:
    mask = 0
    for i in range(f.arity):
        bit = 1 << (f.arity - 1 - i)
        for r in range(2 ** f.arity):
            if f.table[r] != f.table[r ^ bit]:
                mask |= bit
                break
    return mask


def fictive_coordinates(f: BooleanFunction) -> set[int]:
    """1-based coordinates the function never depends on."""
    mask = _nonfictive_mask(f)
    return {
        i
        for i in range(1, f.arity + 1)
        if not mask & (1 << (f.arity - i))
    }


def has_property(f: BooleanFunction, kind) -> bool:
    if isinstance(kind, str):
        kind = PropertyKind(kind)
    n = f.arity
    rows = 2 ** n
    if kind is PropertyKind.REPRODUCING_0:
        return f.table[0] == 0
    if kind is PropertyKind.REPRODUCING_1:
        return f.table[rows - 1] == 1
    if kind is PropertyKind.MONOTONE:
        for r in range(rows):
            for j in range(n):
                bit = 1 << j
                if not r & bit and f.table[r] > f.table[r | bit]:
                    return False
        return True
    if kind is PropertyKind.AFFINE:
        c = f.table[0]
        mask = 0
        for i in range(n):
            bit = 1 << (n - 1 - i)
            if f.table[bit] != c:
                mask |= bit
        return all(
            f.table[r] == (bin(r & mask).count("1") & 1) ^ c for r in range(rows)
        )
    if kind is PropertyKind.SELF_DUAL:
        return f.table == dual(f).table
    if kind is PropertyKind.DISJUNCTION_SHAPE:
        mask = _nonfictive_mask(f)
        if mask == 0:
            return True  # constant
        return all(f.table[r] == (1 if r & mask else 0) for r in range(rows))
    if kind is PropertyKind.CONJUNCTION_SHAPE:
        mask = _nonfictive_mask(f)
        if mask == 0:
            return True
        return all(f.table[r] == (1 if r & mask == mask else 0) for r in range(rows))
    raise ValueError(f"unknown property {kind!r}")


def separating_coordinate(f: BooleanFunction, c) -> int | None:
    """Least 1-based coordinate fixed to c on the whole c-preimage.

    An empty preimage is separated vacuously; coordinate 1 is returned as
    the witness in that case so callers always get a usable coordinate.
    """
    rows = [r for r in range(2 ** f.arity) if f.table[r] == c]
    if not rows:
        return 1
    for i in range(1, f.arity + 1):
        bit = 1 << (f.arity - i)
        if all(((r & bit) != 0) == (c == 1) for r in rows):
            return i
    return None


def is_separating(f: BooleanFunction, c) -> bool:
    return separating_coordinate(f, c) is not None


def _minimal_masks(masks):
    # only inclusion-minimal coordinate sets matter for intersections
    out = []
    for m in sorted(masks, key=lambda v: bin(v).count("1")):
        if not any(kept & m == kept for kept in out):
            out.append(m)
    return out


def is_separating_degree(f: BooleanFunction, c, k) -> bool:
    """Every subset of the c-preimage of size min(k, preimage size) shares
    a coordinate fixed to c.

    In particular a singleton preimage row must itself contain at least one
    c-coordinate; the empty preimage passes vacuously.
    """
    if k < 1:
        raise ValueError("degree must be at least 1")
    rows = [r for r in range(2 ** f.arity) if f.table[r] == c]
    if not rows:
        return True
    full = (1 << f.arity) - 1
    if c == 1:
        masks = {r for r in rows}
    else:
        masks = {full ^ r for r in rows}
    masks = _minimal_masks(masks)
    depth = min(k, len(rows))
    level = set(masks)
    # all intersections of up to `depth` masks; emptiness is monotone, so
    # checking the deepest level covers every smaller subset as well
    for _ in range(depth - 1):
        level = {a & b for a in level for b in masks}
        if 0 in level:
            return False
    return 0 not in level


def is_separating_deg2(f: BooleanFunction, c) -> bool:
    return is_separating_degree(f, c, 2)


def threshold_function(p, q) -> BooleanFunction:
    """Arity-p function that is 1 when at least q arguments are 1."""
    if not (isinstance(p, int) and isinstance(q, int) and p > q >= 2):
        raise BadThreshold(f"need p > q >= 2, got p={p!r} q={q!r}")
    if p > MAX_ARITY:
        raise TooLarge(f"arity {p} exceeds the supported maximum {MAX_ARITY}")
    table = tuple(1 if bin(r).count("1") >= q else 0 for r in range(2 ** p))
    return BooleanFunction(p, table, f"thr{p}_{q}")
