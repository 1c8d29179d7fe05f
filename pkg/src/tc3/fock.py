"""Three-mode Fock bases, ladder operators and the trilinear Hamiltonian.

Operators are ``scipy.sparse.csr_matrix`` objects assembled from coordinate
triplets (duplicates are summed at assembly). Every basis is an ordered list of
occupations ``(n_a, n_b, n_c)``; an operator matrix element is kept only when
the image state belongs to the basis, which is hard truncation for the cube
and exact for a single block.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgument, UnsupportedOperation

MODES = ("a", "b", "c")
_MODE_INDEX = {m: i for i, m in enumerate(MODES)}


class Occupation(NamedTuple):
    n_a: int
    n_b: int
    n_c: int


class _Basis:
    """Mixin: index lookup over ``self.states``."""

    @cached_property
    def index(self):
        return {s: i for i, s in enumerate(self.states)}

    @property
    def dim(self):
        return len(self.states)

    def occupations(self):
        """``(dim, 3)`` integer array of occupations, basis order."""
        return np.array(self.states, dtype=np.int64).reshape(-1, 3)


def _check_nonneg(**kwargs):
    for name, value in kwargs.items():
        if int(value) != value or value < 0:
            raise InvalidArgument(f"{name} must be a nonnegative integer, got {value!r}")


@dataclass(frozen=True)
class Block(_Basis):
    """Joint eigenspace of ``n_a + n_b = q_ab`` and ``n_a + n_c = q_ac``."""

    q_ab: int
    q_ac: int

    def __post_init__(self):
        _check_nonneg(q_ab=self.q_ab, q_ac=self.q_ac)

    @cached_property
    def states(self):
        top = min(self.q_ab, self.q_ac)
        return tuple(Occupation(na, self.q_ab - na, self.q_ac - na) for na in range(top + 1))

    # alias used by the basis constructors
    @property
    def basis(self):
        return self.states


def block_basis(q_ab, q_ac):
    """Canonical basis of the invariant block, ascending in ``n_a``."""
    return Block(q_ab, q_ac)


# basis-specification spelling of the same object
SingleBlock = Block


@dataclass(frozen=True)
class TruncatedCube(_Basis):
    """All occupations with ``n_x <= cut_x``, lexicographic in (n_a, n_b, n_c)."""

    cut_a: int
    cut_b: int
    cut_c: int

    def __post_init__(self):
        _check_nonneg(cut_a=self.cut_a, cut_b=self.cut_b, cut_c=self.cut_c)

    @cached_property
    def states(self):
        ranges = (range(self.cut_a + 1), range(self.cut_b + 1), range(self.cut_c + 1))
        return tuple(Occupation(*s) for s in product(*ranges))

    def cutoff(self, mode):
        return (self.cut_a, self.cut_b, self.cut_c)[_MODE_INDEX[mode]]


@dataclass(frozen=True)
class TwoModeTruncated(_Basis):
    """Two active modes with per-mode cutoffs; the third mode is frozen at 0.

    ``modes`` names the active pair in order (first, second). Optional sector
    filters keep only states with ``n_second - n_first == n_diff`` or
    ``n_first + n_second == n_total``; both commute with the Jordan-Schwinger
    generators of the matching algebra. States are ordered lexicographically
    in (n_first, n_second).
    """

    cut_1: int
    cut_2: int
    modes: tuple = ("b", "c")
    n_diff: int | None = None
    n_total: int | None = None

    def __post_init__(self):
        _check_nonneg(cut_1=self.cut_1, cut_2=self.cut_2)
        if len(self.modes) != 2 or self.modes[0] == self.modes[1] or any(
            m not in _MODE_INDEX for m in self.modes
        ):
            raise InvalidArgument(f"modes must be two distinct names from {MODES}")

    @cached_property
    def states(self):
        i1, i2 = _MODE_INDEX[self.modes[0]], _MODE_INDEX[self.modes[1]]
        out = []
        for n1 in range(self.cut_1 + 1):
            for n2 in range(self.cut_2 + 1):
                if self.n_diff is not None and n2 - n1 != self.n_diff:
                    continue
                if self.n_total is not None and n1 + n2 != self.n_total:
                    continue
                occ = [0, 0, 0]
                occ[i1], occ[i2] = n1, n2
                out.append(Occupation(*occ))
        return tuple(out)

    def cutoff(self, mode):
        if mode == self.modes[0]:
            return self.cut_1
        if mode == self.modes[1]:
            return self.cut_2
        return 0

    def pair(self, i):
        """Occupations of the two active modes for basis index ``i``."""
        s = self.states[i]
        return s[_MODE_INDEX[self.modes[0]]], s[_MODE_INDEX[self.modes[1]]]


def _assemble(rows, cols, vals, dim):
    return sp.coo_matrix(
        (np.asarray(vals, dtype=np.complex128), (np.asarray(rows, int), np.asarray(cols, int))),
        shape=(dim, dim),
    ).tocsr()


def ladder_matrix(basis, mode, kind):
    """Matrix of ``a``, ``a^+`` or ``a^+ a`` for one mode on ``basis``.

    ``kind`` is ``"annihilate"``, ``"create"`` or ``"number"``.
    """
    if mode not in _MODE_INDEX:
        raise InvalidArgument(f"unknown mode {mode!r}")
    if kind not in ("annihilate", "create", "number"):
        raise InvalidArgument(f"unknown operator kind {kind!r}")
    if isinstance(basis, Block) and kind != "number":
        raise UnsupportedOperation("single-mode ladder operators leave an invariant block")
    m = _MODE_INDEX[mode]
    index = basis.index
    rows, cols, vals = [], [], []
    for col, occ in enumerate(basis.states):
        n = occ[m]
        if kind == "number":
            if n:
                rows.append(col)
                cols.append(col)
                vals.append(float(n))
            continue
        step = 1 if kind == "create" else -1
        target = list(occ)
        target[m] = n + step
        if target[m] < 0:
            continue
        row = index.get(Occupation(*target))
        if row is None:
            continue
        rows.append(row)
        cols.append(col)
        vals.append(np.sqrt(n + 1.0) if step > 0 else np.sqrt(float(n)))
    return _assemble(rows, cols, vals, basis.dim)


def monomial_matrix(basis, changes):
    """Matrix of a normal-ordered monomial such as ``b^+ c^+`` or ``a^+ b``.

    ``changes`` maps a mode name to +1 (one creation) or -1 (one annihilation).
    Acting directly on basis states keeps sector bases closed, where a product
    of single-mode ladders would step outside and vanish.
    """
    steps = [0, 0, 0]
    for mode, step in changes.items():
        if mode not in _MODE_INDEX or step not in (-1, 1):
            raise InvalidArgument(f"bad monomial factor {mode!r}: {step!r}")
        steps[_MODE_INDEX[mode]] = step
    index = basis.index
    rows, cols, vals = [], [], []
    for col, occ in enumerate(basis.states):
        target = tuple(n + d for n, d in zip(occ, steps))
        if min(target) < 0:
            continue
        row = index.get(Occupation(*target))
        if row is None:
            continue
        # one square root of the integer product keeps products such as K+ K- exact to 1 ulp
        radicand = 1
        for n, d in zip(occ, steps):
            if d > 0:
                radicand *= n + 1
            elif d < 0:
                radicand *= n
        rows.append(row)
        cols.append(col)
        vals.append(np.sqrt(float(radicand)))
    return _assemble(rows, cols, vals, basis.dim)


def hamiltonian_matrix(params, basis):
    """``w1 n_a + w2 n_b + w3 n_c + g (a^+ b c + a b^+ c^+)`` on ``basis``."""
    w = np.array([params.omega1, params.omega2, params.omega3], dtype=float)
    g = float(params.g)
    index = basis.index
    rows, cols, vals = [], [], []
    for col, occ in enumerate(basis.states):
        diag = float(w @ np.asarray(occ, dtype=float))
        if diag:
            rows.append(col)
            cols.append(col)
            vals.append(diag)
        na, nb, nc = occ
        if g == 0.0 or nb == 0 or nc == 0:
            continue
        row = index.get(Occupation(na + 1, nb - 1, nc - 1))
        if row is None:
            continue
        amp = g * np.sqrt((na + 1.0) * nb * nc)
        rows += [row, col]
        cols += [col, row]
        vals += [amp, amp]
    return _assemble(rows, cols, vals, basis.dim)


def commutator(a, b):
    """``AB - BA``; sparse in, sparse out."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"dimension mismatch: {a.shape} vs {b.shape}")
    out = a @ b - b @ a
    return sp.csr_matrix(out) if sp.issparse(out) else out


def charge_operators(basis):
    """Diagonal ``n_a + n_b`` and ``n_a + n_c`` on ``basis``."""
    occ = basis.occupations()
    return (
        sp.diags((occ[:, 0] + occ[:, 1]).astype(float), format="csr"),
        sp.diags((occ[:, 0] + occ[:, 2]).astype(float), format="csr"),
    )


def interior_mask(basis, modes=None):
    """True for basis states that sit strictly below every cutoff of ``modes``.

    These are the rows on which products of truncated ladder operators agree
    with the untruncated ones.
    """
    if isinstance(basis, Block):
        return np.ones(basis.dim, dtype=bool)
    if modes is None:
        modes = basis.modes if isinstance(basis, TwoModeTruncated) else MODES
    occ = basis.occupations()
    mask = np.ones(basis.dim, dtype=bool)
    for m in modes:
        mask &= occ[:, _MODE_INDEX[m]] < basis.cutoff(m)
    return mask


def block_indices(basis, q_ab, q_ac):
    """Positions of the states of Block(q_ab, q_ac) inside ``basis`` (block order)."""
    index = basis.index
    try:
        return np.array([index[s] for s in Block(q_ab, q_ac).states], dtype=int)
    except KeyError as exc:
        raise InvalidArgument(f"block ({q_ab}, {q_ac}) is not contained in the basis") from exc


def hermiticity_residual(m):
    """``max |M - M^H|``."""
    diff = m - m.conj().T
    if sp.issparse(diff):
        return float(abs(diff).max()) if diff.nnz else 0.0
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def operator_to_dict(m):
    """Coordinate-list form ``{"dim", "entries": [[row, col, re, im], ...]}``."""
    coo = sp.coo_matrix(m)
    order = np.lexsort((coo.col, coo.row))
    entries = [
        [int(coo.row[i]), int(coo.col[i]), float(coo.data[i].real), float(coo.data[i].imag)]
        for i in order
    ]
    return {"dim": int(m.shape[0]), "entries": entries}


def block_to_dict(block):
    return {
        "q_ab": block.q_ab,
        "q_ac": block.q_ac,
        "dim": block.dim,
        "basis": [list(s) for s in block.states],
    }
