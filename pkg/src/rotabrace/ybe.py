"""Set-theoretic Yang-Baxter solutions attached to dual weak braces.

A map on pairs is stored as two tables, ``first[a, b]`` and ``second[a, b]``,
with ``r(a, b) = (first[a, b], second[a, b])``.  For a brace solution these
are ``lambda_a(b)`` and ``rho_b(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .clifford import PASS, Verdict
from .weak_brace import opposite_brace


@dataclass(frozen=True, eq=False)
class SolutionMap:
    first: np.ndarray
    second: np.ndarray

    def __post_init__(self):
        for attr in ("first", "second"):
            arr = np.array(getattr(self, attr), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
        n = len(self.first)
        if self.first.shape != (n, n) or self.second.shape != (n, n):
            raise ValueError("solution tables must be square and of equal size")
        if n and (min(self.first.min(), self.second.min()) < 0 or max(self.first.max(), self.second.max()) >= n):
            raise ValueError("solution entries out of range")

    @property
    def order(self):
        return len(self.first)

    def __call__(self, a, b):
        return int(self.first[a, b]), int(self.second[a, b])

    def __eq__(self, other):
        if not isinstance(other, SolutionMap):
            return NotImplemented
        return np.array_equal(self.first, other.first) and np.array_equal(self.second, other.second)

    def __hash__(self):
        return hash((self.first.tobytes(), self.second.tobytes()))

    def lam(self, a):
        """lambda_a as an array b -> first component of r(a, b)."""
        return self.first[a]

    def rho(self, b):
        """rho_b as an array a -> second component of r(a, b)."""
        return self.second[:, b]

    @cached_property
    def braid_ok(self):
        return bool(check_braid(self))

    @cached_property
    def left_nondegenerate(self):
        return all(len(set(self.lam(a).tolist())) == self.order for a in range(self.order))

    @cached_property
    def right_nondegenerate(self):
        return all(len(set(self.rho(b).tolist())) == self.order for b in range(self.order))

    @cached_property
    def is_bijective(self):
        codes = self.first * self.order + self.second
        return len(np.unique(codes)) == self.order * self.order

    def to_dict(self):
        r = np.stack([self.first, self.second], axis=-1)
        return {"order": self.order, "r": r.tolist()}

    @classmethod
    def from_dict(cls, data):
        r = np.asarray(data["r"], dtype=np.int64)
        n = int(data["order"])
        if r.shape != (n, n, 2):
            raise ValueError(f"expected an {n}x{n} table of pairs, got shape {r.shape}")
        return cls(r[..., 0], r[..., 1])


def flip_map(n):
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return SolutionMap(b, a)


def identity_map(n):
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return SolutionMap(a, b)


def random_pair_map(n, seed):
    """A uniformly random map on pairs; almost never a solution."""
    rng = np.random.default_rng(seed)
    return SolutionMap(rng.integers(0, n, size=(n, n)), rng.integers(0, n, size=(n, n)))


def solution_from_brace(B):
    """r(a, b) = (lambda_a(b), rho_b(a)) read from the brace's action tables."""
    return SolutionMap(B.lam, B.rho.T)


def check_braid(r):
    """Compare (r x id)(id x r)(r x id) with (id x r)(r x id)(id x r) on all triples."""
    w = kernels.braid_witness(r.first, r.second)
    if w is None:
        return PASS
    return Verdict(False, "braid", tuple(w))


def compose(r, s):
    """The map r s, i.e. first s then r."""
    return SolutionMap(r.first[s.first, s.second], r.second[s.first, s.second])


def _compose_maps(f, g):
    """f after g for self-maps given as arrays."""
    return np.asarray(f)[np.asarray(g)]


def _completely_regular(x, y):
    return (
        np.array_equal(_compose_maps(_compose_maps(x, y), x), x)
        and np.array_equal(_compose_maps(_compose_maps(y, x), y), y)
        and np.array_equal(_compose_maps(x, y), _compose_maps(y, x))
    )


def regularity_report(B, r=None, r_op=None):
    """Regularity, degeneracy and skew-brace data of the solution of ``B``."""
    if r is None:
        r = solution_from_brace(B)
    if r_op is None:
        r_op = solution_from_brace(opposite_brace(B))
    rr = compose(r, r_op)
    n = B.order
    cinv = B.cinv
    lam_ok = all(_completely_regular(r.lam(a), r.lam(int(cinv[a]))) for a in range(n))
    rho_ok = all(_completely_regular(r.rho(b), r.rho(int(cinv[b]))) for b in range(n))
    ident = identity_map(n)
    skew = B.is_skew_brace
    return {
        "r_rop_r": compose(rr, r) == r,
        "rop_r_rop": compose(compose(r_op, r), r_op) == r_op,
        "r_rop_commute": rr == compose(r_op, r),
        "lambda_completely_regular": lam_ok,
        "rho_completely_regular": rho_ok,
        "left_nondegenerate": r.left_nondegenerate,
        "right_nondegenerate": r.right_nondegenerate,
        "bijective": r.is_bijective,
        "skew_brace": skew,
        "inverse_is_opposite": rr == ident and compose(r_op, r) == ident,
    }


def element_invariants(r):
    """Per-element data preserved by any equivalence of solutions."""
    out = []
    for a in range(r.order):
        la, ra = r.lam(a), r.rho(a)
        out.append((
            len(set(la.tolist())),
            int(np.sum(la == np.arange(r.order))),
            len(set(ra.tolist())),
            int(np.sum(ra == np.arange(r.order))),
            int(r.first[a, a] == a),
            int(r.second[a, a] == a),
        ))
    return out


def is_equivalence(r, s, f):
    """True when (f x f) r = s (f x f)."""
    f = np.asarray(f)
    n = r.order
    if sorted(f.tolist()) != list(range(n)):
        return False
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return bool(
        np.array_equal(f[r.first], s.first[f[a], f[b]])
        and np.array_equal(f[r.second], s.second[f[a], f[b]])
    )


def solutions_equivalent(r, s):
    """A bijection f with (f x f) r = s (f x f), or None."""
    if r.order != s.order:
        return None
    ir, is_ = element_invariants(r), element_invariants(s)
    if sorted(ir) != sorted(is_):
        return None
    cands = [[c for c in range(s.order) if is_[c] == ir[a]] for a in range(r.order)]
    f = kernels.find_conjugating_bijection(r.first, r.second, s.first, s.second, cands)
    if f is None:
        return None
    return tuple(f)


def operator_rho_formula(S, R, B):
    """rho_b(a) = -R(l) - l + a + l + R(l) with l = lambda_a(b), for B = S_R."""
    n = S.order
    out = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        for a in range(n):
            lab = int(B.lam[a, b])
            rl = R(lab)
            out[b, a] = S.op(int(S.inv[rl]), int(S.inv[lab]), a, lab, rl)
    return out
