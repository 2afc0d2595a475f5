"""Dual weak braces: verification, construction, ideals, socle and quotients.

A dual weak brace is a set with two Clifford semigroup structures ``+`` and
``o`` such that ``a o (b + c) = a o b - a + a o c`` and ``a o a^- = -a + a``.
Tables are stored with ``lam[a, b] = lambda_a(b) = -a + a o b`` and
``rho[b, a] = rho_b(a) = lambda_a(b)^- o a o b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .clifford import (
    PASS,
    CliffordError,
    CliffordSemigroup,
    SpecInvariantViolated,
    SubsetOutOfRange,
    Verdict,
    is_normal_subset,
    verify_clifford,
)
from .rota_baxter import CarrierTooLarge

DEFAULT_MAX_IDEAL_ORDER = 10


class BraceError(ValueError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class AddNotClifford(BraceError):
    def __init__(self, cause):
        super().__init__(f"additive table: {cause}", getattr(cause, "witness", ()))
        self.cause = cause


class CircNotClifford(BraceError):
    def __init__(self, cause):
        super().__init__(f"multiplicative table: {cause}", getattr(cause, "witness", ()))
        self.cause = cause


class DistributivityFailed(BraceError):
    def __init__(self, a, b, c):
        super().__init__(f"a o (b + c) != a o b - a + a o c at {(a, b, c)}", (a, b, c))


class InverseLawFailed(BraceError):
    def __init__(self, a):
        super().__init__(f"a o a^- != -a + a at a={a}", (a,))


class BraceInvariantFailed(BraceError):
    pass


class NotAnIdeal(ValueError):
    def __init__(self, which, verdict=None):
        detail = f" ({verdict.reason} at {verdict.witness})" if verdict is not None else ""
        super().__init__(f"{which} is not an ideal{detail}")
        self.which = which
        self.verdict = verdict


def _first(mask):
    bad = np.argwhere(~mask)
    return tuple(int(x) for x in bad[0])


@dataclass(frozen=True, eq=False)
class DualWeakBrace:
    add: CliffordSemigroup
    circ: CliffordSemigroup
    lam: np.ndarray
    rho: np.ndarray
    name: str = ""

    @property
    def order(self):
        return self.add.order

    @property
    def add_table(self):
        return self.add.table

    @property
    def circ_table(self):
        return self.circ.table

    @property
    def neg(self):
        return self.add.inv

    @property
    def cinv(self):
        return self.circ.inv

    @property
    def idempotents(self):
        return self.add.idempotent_set

    def __eq__(self, other):
        if not isinstance(other, DualWeakBrace):
            return NotImplemented
        return self.add == other.add and self.circ == other.circ

    def __hash__(self):
        return hash((self.add_table.tobytes(), self.circ_table.tobytes()))

    def __repr__(self):
        return f"DualWeakBrace({self.name or '?'}, order={self.order})"

    @property
    def is_trivial(self):
        return bool(np.array_equal(self.add_table, self.circ_table))

    @property
    def is_almost_trivial(self):
        return bool(np.array_equal(self.add_table, self.circ_table.T))

    @property
    def is_skew_brace(self):
        return len(self.idempotents) == 1

    def to_dict(self):
        return {
            "name": self.name,
            "order": self.order,
            "add_table": self.add_table.tolist(),
            "circ_table": self.circ_table.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        B = verify_dual_weak_brace(data["add_table"], data["circ_table"], data.get("name", ""))
        if "order" in data and int(data["order"]) != B.order:
            raise BraceError(f"declared order {data['order']} does not match tables of order {B.order}")
        return B


def _action_tables(add, circ):
    A, C = add.table, circ.table
    lam = np.ascontiguousarray(A[add.inv[:, None], C])
    # rho[b, a] = lambda_a(b)^- o (a o b)
    rho = np.ascontiguousarray(C[circ.inv[lam], C].T)
    lam.setflags(write=False)
    rho.setflags(write=False)
    return lam, rho


def verify_dual_weak_brace(add_table, circ_table, name=""):
    """Check both Clifford structures, the two brace axioms and their consequences."""
    try:
        add = verify_clifford(add_table, name)
    except CliffordError as exc:
        raise AddNotClifford(exc) from exc
    try:
        circ = verify_clifford(circ_table, name)
    except CliffordError as exc:
        raise CircNotClifford(exc) from exc
    if add.order != circ.order:
        raise BraceError("tables have different orders")
    A, C = add.table, circ.table
    neg, cinv = add.inv, circ.inv
    n = add.order
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = C[a, A[b, c]]
    rhs = A[A[C[a, b], neg[a]], C[a, c]]
    ok = lhs == rhs
    if not ok.all():
        raise DistributivityFailed(*_first(ok))
    rng = np.arange(n)
    ok = C[rng, cinv] == A[neg, rng]
    if not ok.all():
        raise InverseLawFailed(int(np.argmin(ok)))
    if add.idempotent_set != circ.idempotent_set:
        raise BraceInvariantFailed("idempotents of + and o differ")
    E = list(add.idempotent_set)
    if not np.array_equal(A[np.ix_(E, E)], C[np.ix_(E, E)]):
        raise BraceInvariantFailed("+ and o differ on idempotents")
    lam, rho = _action_tables(add, circ)
    ok = C == A[rng[:, None], lam]
    if not ok.all():
        raise BraceInvariantFailed("a o b != a + lambda_a(b)", _first(ok))
    # a + b = a o lambda_{a^-}(b)
    ok = A == C[rng[:, None], lam[cinv]]
    if not ok.all():
        raise BraceInvariantFailed("a + b != a o lambda_{a^-}(b)", _first(ok))
    return DualWeakBrace(add, circ, lam, rho, name)


def trivial_brace(S):
    return verify_dual_weak_brace(S.table, S.table, f"trivial({S.name})" if S.name else "")


def almost_trivial_brace(S):
    """Addition a + b := b o a over the Clifford semigroup (S, o)."""
    return verify_dual_weak_brace(S.table.T, S.table, f"almost-trivial({S.name})" if S.name else "")


def circ_table_from_operator(S, images):
    R = np.asarray(images, dtype=np.int64)
    A = S.table
    n = S.order
    rng = np.arange(n)
    left = A[rng, R]  # a + R(a)
    return A[A[left[:, None], rng[None, :]], S.inv[R][:, None]]


def brace_from_operator(S, R):
    """The dual weak brace with a o b = a + R(a) + b - R(a)."""
    name = f"{S.name}_R{list(R.images)}" if S.name else ""
    return verify_dual_weak_brace(S.table, circ_table_from_operator(S, R.images), name)


def operator_circ_inverse(S, R):
    """-R(a) - a + R(a), which is the multiplicative inverse in S_R."""
    return [S.op(int(S.inv[R(a)]), int(S.inv[a]), R(a)) for a in range(S.order)]


def is_bi_weak_brace(B):
    """Whether swapping + and o gives a weak brace again."""
    A, C = B.add_table, B.circ_table
    neg, cinv = B.neg, B.cinv
    n = B.order
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = A[a, C[b, c]]
    rhs = C[C[A[a, b], cinv[a]], A[a, c]]
    ok = lhs == rhs
    if not ok.all():
        return Verdict(False, "a + (b o c) = (a + b) o a^- o (a + c)", _first(ok))
    rng = np.arange(n)
    ok = A[rng, neg] == C[cinv, rng]
    if not ok.all():
        return Verdict(False, "a - a = a^- o a", (int(np.argmin(ok)),))
    return PASS


def opposite_brace(B):
    """Same multiplication, addition a +op b := b + a."""
    name = f"op({B.name})" if B.name else ""
    return verify_dual_weak_brace(B.add_table.T, B.circ_table, name)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class Ideal:
    brace: DualWeakBrace
    members: tuple
    normal_in_add: bool = True
    lambda_invariant: bool = True
    normal_in_circ: bool = True

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.members == other.members and self.brace == other.brace

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"Ideal({list(self.members)})"


def _members(B, I):
    members = tuple(sorted(set(int(x) for x in I)))
    if members and (members[0] < 0 or members[-1] >= B.order):
        raise SubsetOutOfRange(f"subset {list(members)} not inside 0..{B.order - 1}")
    return members


def lambda_invariance(B, members):
    inside = np.zeros(B.order, dtype=bool)
    inside[list(members)] = True
    for a in range(B.order):
        for x in members:
            y = int(B.lam[a, x])
            if not inside[y]:
                return Verdict(False, "2", (a, x))
    return PASS


def is_ideal(B, I):
    """Normal in (S,+), lambda-invariant and normal in (S,o).

    The failing verdict's reason is ``"1"``, ``"2"`` or ``"3"`` followed by
    the normal-subset condition where applicable, e.g. ``"3.4"``.
    """
    members = _members(B, I)
    v = is_normal_subset(B.add, members)
    if not v:
        return Verdict(False, f"1.{v.reason}", v.witness)
    v = lambda_invariance(B, members)
    if not v:
        return v
    v = is_normal_subset(B.circ, members)
    if not v:
        return Verdict(False, f"3.{v.reason}", v.witness)
    return PASS


def make_ideal(B, I, which="subset"):
    members = _members(B, I)
    verdict = is_ideal(B, members)
    if not verdict:
        raise NotAnIdeal(which, verdict)
    return Ideal(B, members)


def socle(B):
    """Elements a with a + b = a o b and a + b = b + a for every b."""
    A, C = B.add_table, B.circ_table
    keep = np.all(A == C, axis=1) & np.all(A == A.T, axis=1)
    return make_ideal(B, np.flatnonzero(keep).tolist(), "socle")


def _components(B):
    """Non-idempotent elements grouped under a ~ -a and a ~ a^-."""
    E = set(B.idempotents)
    parent = list(range(B.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(B.order):
        for b in (int(B.neg[a]), int(B.cinv[a])):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for a in range(B.order):
        if a not in E:
            groups.setdefault(find(a), []).append(a)
    return [tuple(g) for _, g in sorted(groups.items())]


def enumerate_ideals(B, cap=DEFAULT_MAX_IDEAL_ORDER):
    """All ideals, sorted by size then lexicographically."""
    if B.order > cap:
        raise CarrierTooLarge(B.order, cap)
    base = list(B.idempotents)
    comps = _components(B)
    out = []
    for mask in product((False, True), repeat=len(comps)):
        members = list(base)
        for take, comp in zip(mask, comps):
            if take:
                members.extend(comp)
        members = tuple(sorted(members))
        if is_ideal(B, members):
            out.append(Ideal(B, members))
    out.sort(key=lambda I: (len(I.members), I.members))
    return out


def ideal_sum_and_product(B, I, J):
    """The sets {i + j} and {i o j}, both returned as ideals."""
    I = make_ideal(B, I, "I")
    J = make_ideal(B, J, "J")
    s = {int(B.add_table[i, j]) for i in I for j in J}
    p = {int(B.circ_table[i, j]) for i in I for j in J}
    return make_ideal(B, s, "I+J"), make_ideal(B, p, "I o J")


def congruence_classes(B, I, description="additive"):
    """Classes of a ~ b iff a^0 = b^0 and (-a + b in I, or a^- o b in I)."""
    members = set(I)
    n = B.order
    idem = B.add.idem
    if description == "additive":
        rel = lambda a, b: int(B.add_table[B.neg[a], b]) in members  # noqa: E731
    elif description == "multiplicative":
        rel = lambda a, b: int(B.circ_table[B.cinv[a], b]) in members  # noqa: E731
    else:
        raise ValueError(description)
    label = [-1] * n
    classes = []
    for a in range(n):
        if label[a] != -1:
            continue
        cls = [b for b in range(n) if idem[a] == idem[b] and rel(a, b)]
        for b in cls:
            label[b] = len(classes)
        classes.append(tuple(cls))
    return classes


def quotient_brace(B, I):
    """Quotient by the congruence of an ideal.

    Classes are numbered in order of their smallest element.  Returns the
    quotient brace and the projection array (element -> class number).
    """
    if not isinstance(I, Ideal):
        I = make_ideal(B, I, "I")
    classes = congruence_classes(B, I.members)
    proj = np.empty(B.order, dtype=np.int64)
    for k, cls in enumerate(classes):
        proj[list(cls)] = k
    reps = [cls[0] for cls in classes]
    add = proj[B.add_table[np.ix_(reps, reps)]]
    circ = proj[B.circ_table[np.ix_(reps, reps)]]
    # congruence check: the tables must not depend on representatives
    if not (np.array_equal(proj[B.add_table], add[proj[:, None], proj[None, :]])
            and np.array_equal(proj[B.circ_table], circ[proj[:, None], proj[None, :]])):
        raise BraceInvariantFailed("relation is not a congruence")
    name = f"{B.name}/{list(I.members)}" if B.name else ""
    return verify_dual_weak_brace(add, circ, name), proj


# ---------------------------------------------------------------------------
# strong semilattices of braces


@dataclass(frozen=True, eq=False)
class BraceSemilatticeSpec:
    """Meet semilattice with a brace per vertex and linking brace homomorphisms."""

    meet: np.ndarray
    braces: tuple
    links: dict

    def geq(self, alpha, beta):
        return int(self.meet[alpha, beta]) == beta

    def link(self, alpha, beta):
        if alpha == beta:
            return tuple(range(self.braces[alpha].order))
        return self.links[(alpha, beta)]

    @property
    def offsets(self):
        out = [0]
        for B in self.braces:
            out.append(out[-1] + B.order)
        return out


def _check_brace_spec(spec):
    meet = np.asarray(spec.meet)
    k = len(meet)
    if len(spec.braces) != k:
        raise SpecInvariantViolated("one brace per vertex is required")
    if not np.array_equal(meet, meet.T) or any(meet[a, a] != a for a in range(k)):
        raise SpecInvariantViolated("meet must be commutative and idempotent")
    for a, b, c in product(range(k), repeat=3):
        if meet[meet[a, b], c] != meet[a, meet[b, c]]:
            raise SpecInvariantViolated("meet is not associative")
    for a, b in product(range(k), repeat=2):
        if not spec.geq(a, b):
            continue
        if a != b and (a, b) not in spec.links:
            raise SpecInvariantViolated(f"missing link ({a},{b})")
        phi = spec.link(a, b)
        Ba, Bb = spec.braces[a], spec.braces[b]
        for x, y in product(range(Ba.order), repeat=2):
            if phi[Ba.add_table[x, y]] != Bb.add_table[phi[x], phi[y]]:
                raise SpecInvariantViolated(f"link ({a},{b}) does not preserve +")
            if phi[Ba.circ_table[x, y]] != Bb.circ_table[phi[x], phi[y]]:
                raise SpecInvariantViolated(f"link ({a},{b}) does not preserve o")
    for a, b, c in product(range(k), repeat=3):
        if spec.geq(a, b) and spec.geq(b, c):
            pab, pbc, pac = spec.link(a, b), spec.link(b, c), spec.link(a, c)
            if any(pbc[pab[x]] != pac[x] for x in range(len(pab))):
                raise SpecInvariantViolated(f"links do not compose along {a} >= {b} >= {c}")


def strong_semilattice_of_braces(spec, name=""):
    """Glue the vertex braces; both operations go through the linking maps."""
    _check_brace_spec(spec)
    offs = spec.offsets
    n = offs[-1]
    meet = np.asarray(spec.meet)
    k = len(spec.braces)
    add = np.empty((n, n), dtype=np.int64)
    circ = np.empty((n, n), dtype=np.int64)
    for a, b in product(range(k), repeat=2):
        m = int(meet[a, b])
        pa, pb = spec.link(a, m), spec.link(b, m)
        Bm = spec.braces[m]
        for x in range(spec.braces[a].order):
            for y in range(spec.braces[b].order):
                add[offs[a] + x, offs[b] + y] = offs[m] + Bm.add_table[pa[x], pb[y]]
                circ[offs[a] + x, offs[b] + y] = offs[m] + Bm.circ_table[pa[x], pb[y]]
    return verify_dual_weak_brace(add, circ, name)
