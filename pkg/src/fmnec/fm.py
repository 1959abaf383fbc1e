"""Degree-2 factorization machine: sparse instances, parameters, prediction.

The model scores a sparse instance x as

    score(x) = w0 + sum_i w[i] x[i] + sum_{i<j} <V[i], V[j]> x[i] x[j]

where every feature i owns a k-dimensional factor row V[i] and the weight
of each feature pair is the inner product of the two rows.  ``predict_raw``
evaluates the interaction term through the factored identity

    0.5 * sum_f [ (sum_i V[i,f] x[i])^2 - sum_i (V[i,f] x[i])^2 ]

touching only nonzero entries, so the cost is O(nnz * k) instead of
quadratic in nnz.  ``predict_raw_naive`` is the literal pairwise double
loop, kept as an independent cross-check oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .util import LineCursor, atomic_write, format_g17

MODEL_FORMAT_HEADER = "FMMODEL v1"


class SparseVector:
    """A sparse instance: parallel arrays of feature indices and values.

    Invariants: indices are non-negative and strictly increasing; values are
    finite and nonzero (zero entries are omitted rather than stored).
    """

    __slots__ = ("indices", "values")

    def __init__(self, indices, values):
        idx = np.array(indices, dtype=np.int64)
        val = np.array(values, dtype=np.float64)
        if idx.ndim != 1 or val.ndim != 1 or idx.size != val.size:
            raise ValueError("indices and values must be equal-length 1-d sequences")
        if idx.size:
            if int(idx[0]) < 0:
                raise ValueError("feature indices must be non-negative")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("feature indices must be strictly increasing")
            if not np.all(np.isfinite(val)):
                raise ValueError("feature values must be finite")
            if np.any(val == 0.0):
                raise ValueError("zero-valued entries must be omitted")
        idx.setflags(write=False)
        val.setflags(write=False)
        self.indices = idx
        self.values = val

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls([], [])

    @classmethod
    def from_pairs(cls, pairs) -> "SparseVector":
        """Build from (index, value) pairs in any order; duplicate indices are an error."""
        items = sorted(pairs)
        if not items:
            return cls([], [])
        for (a, _), (b, _) in zip(items, items[1:]):
            if a == b:
                raise ValueError(f"duplicate feature index {a}")
        idx, val = zip(*items)
        return cls(idx, val)

    @classmethod
    def from_dict(cls, mapping) -> "SparseVector":
        return cls.from_pairs(mapping.items())

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def to_pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def __len__(self) -> int:
        return self.nnz

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(
            self.values, other.values
        )

    def __repr__(self):
        inner = ", ".join(f"{i}: {v:g}" for i, v in self.to_pairs())
        return f"SparseVector({{{inner}}})"


class FMModel:
    """Factorization-machine parameters: bias w0, linear weights w, factor matrix V.

    ``w`` has shape (n,), ``V`` shape (n, k).  k = 0 degenerates to a plain
    linear model: V holds no columns and the interaction term is identically
    zero.  Readers treat models as immutable values; only the trainer mutates
    a model, and only one it owns.
    """

    __slots__ = ("w0", "w", "V")

    def __init__(self, w0: float, w, V):
        w = np.array(w, dtype=np.float64)
        V = np.array(V, dtype=np.float64)
        if w.ndim != 1:
            raise ValueError("w must be a 1-d vector")
        if V.ndim != 2:
            raise ValueError("V must be a 2-d matrix")
        if V.shape[0] != w.shape[0]:
            raise ValueError(f"V has {V.shape[0]} rows for {w.shape[0]} linear weights")
        w0 = float(w0)
        if not (np.isfinite(w0) and np.all(np.isfinite(w)) and np.all(np.isfinite(V))):
            raise ValueError("model parameters must be finite")
        self.w0 = w0
        self.w = w
        self.V = V

    @property
    def n(self) -> int:
        return int(self.w.shape[0])

    @property
    def k(self) -> int:
        return int(self.V.shape[1])

    def copy(self) -> "FMModel":
        return FMModel(self.w0, self.w.copy(), self.V.copy())

    def __eq__(self, other):
        if not isinstance(other, FMModel):
            return NotImplemented
        return (
            self.w0 == other.w0
            and np.array_equal(self.w, other.w)
            and np.array_equal(self.V, other.V)
        )

    def __repr__(self):
        return f"FMModel(n={self.n}, k={self.k})"

    def _check_instance(self, x: SparseVector) -> None:
        if x.nnz and int(x.indices[-1]) >= self.n:
            raise DimensionMismatchError(
                f"feature index {int(x.indices[-1])} out of range for n={self.n}"
            )

    def predict_raw(self, x: SparseVector) -> float:
        """Raw score through the factored interaction identity, O(nnz * k)."""
        self._check_instance(x)
        idx = x.indices
        vals = x.values
        score = self.w0
        if idx.size:
            score += float(self.w[idx] @ vals)
        if self.k and idx.size > 1:
            scaled = self.V[idx] * vals[:, None]
            per_factor = scaled.sum(axis=0)
            score += 0.5 * float(per_factor @ per_factor - (scaled * scaled).sum())
        return score

    def predict_raw_naive(self, x: SparseVector) -> float:
        """Raw score through the literal pairwise double loop (cross-check oracle)."""
        self._check_instance(x)
        idx = x.indices.tolist()
        vals = x.values.tolist()
        score = self.w0
        for i, v in zip(idx, vals):
            score += float(self.w[i]) * v
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                score += self.interaction_weight(idx[a], idx[b]) * vals[a] * vals[b]
        return score

    def interaction_weight(self, i: int, j: int) -> float:
        """Pairwise weight of features i and j: the inner product <V[i], V[j]>."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionMismatchError(f"feature pair ({i}, {j}) out of range for n={n}")
        return float(self.V[i] @ self.V[j])


def write_fm_model(fh, model: FMModel) -> None:
    """Emit the FMMODEL v1 text block: header, "n k", w0, w line, V rows."""
    fh.write(MODEL_FORMAT_HEADER + "\n")
    fh.write(f"{model.n} {model.k}\n")
    fh.write(format_g17(model.w0) + "\n")
    fh.write(" ".join(map(format_g17, model.w.tolist())) + "\n")
    for row in model.V.tolist():
        fh.write(" ".join(map(format_g17, row)) + "\n")


def read_fm_model(cursor: LineCursor) -> FMModel:
    """Parse one FMMODEL v1 block starting at the cursor position."""
    header = cursor.take("model header")
    if header != MODEL_FORMAT_HEADER:
        raise cursor.error(f"expected {MODEL_FORMAT_HEADER!r} header, got {header!r}")
    dims = cursor.take("model dimensions").split()
    try:
        n, k = (int(part) for part in dims)
    except ValueError:
        raise cursor.error("dimension line must hold two integers: n k") from None
    if n < 0 or k < 0:
        raise cursor.error("model dimensions must be non-negative")
    w0 = _take_floats(cursor, "bias", 1)[0]
    w = _take_floats(cursor, "linear weights", n)
    V = np.empty((n, k))
    for i in range(n):
        V[i] = _take_floats(cursor, f"factor row {i}", k)
    try:
        return FMModel(w0, w, V)
    except ValueError as exc:
        raise cursor.error(str(exc)) from None


def _take_floats(cursor: LineCursor, what: str, count: int) -> list[float]:
    parts = cursor.take(what).split()
    if len(parts) != count:
        raise cursor.error(f"expected {count} values for {what}, got {len(parts)}")
    try:
        return [float(part) for part in parts]
    except ValueError:
        raise cursor.error(f"non-numeric value in {what}") from None


def save_fm_model(model: FMModel, path) -> None:
    with atomic_write(path) as fh:
        write_fm_model(fh, model)


def load_fm_model(path) -> FMModel:
    with open(path, encoding="utf-8") as fh:
        cursor = LineCursor(fh.readlines(), path=str(path))
    model = read_fm_model(cursor)
    if not cursor.at_end():
        raise cursor.error("trailing content after model block")
    return model
