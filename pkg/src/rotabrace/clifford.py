"""Finite Clifford semigroups given by Cayley tables.

Elements are the integers ``0..n-1`` and every structure map is an integer
array.  The operation is written additively in the rest of the package
(``a + b``, ``-a`` for the inverse, ``a^0`` for the idempotent part), so the
methods here are named accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import kernels
from ._parallel import parallel_map


class CliffordError(ValueError):
    """A table failed one of the Clifford semigroup axioms."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class TableShapeError(CliffordError):
    pass


class NotAssociative(CliffordError):
    def __init__(self, a, b, c):
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}", (a, b, c))


class NoInverse(CliffordError):
    def __init__(self, a):
        super().__init__(f"element {a} has no inverse", (a,))


class NonUniqueInverse(CliffordError):
    def __init__(self, a, candidates):
        super().__init__(f"element {a} has several inverses {list(candidates)}", (a,))
        self.candidates = tuple(candidates)


class NotClifford(CliffordError):
    def __init__(self, a):
        super().__init__(f"a*a^-1 != a^-1*a for a={a}", (a,))


class IdempotentNotCentral(CliffordError):
    def __init__(self, e, a):
        super().__init__(f"idempotent {e} does not commute with {a}", (e, a))


class SpecInvariantViolated(ValueError):
    """A strong-semilattice description is inconsistent."""


class SubsetOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a yes/no structural check, with a witness on failure."""

    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


PASS = Verdict(True)


def _frozen(arr):
    out = np.array(arr, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class CliffordSemigroup:
    table: np.ndarray
    inv: np.ndarray
    idem: np.ndarray
    idempotent_set: tuple
    name: str = ""

    @property
    def order(self):
        return len(self.table)

    @property
    def neg(self):
        return self.inv

    def op(self, *elems):
        """Left-to-right product ``((e0 + e1) + e2) + ...``."""
        t = self.table
        acc = elems[0]
        for x in elems[1:]:
            acc = int(t[acc, x])
        return int(acc)

    def __eq__(self, other):
        if not isinstance(other, CliffordSemigroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        label = self.name or "?"
        return f"CliffordSemigroup({label}, order={self.order})"

    @property
    def identity(self):
        """Two-sided identity element, or None when the semigroup is not a monoid."""
        n = self.order
        rng = np.arange(n)
        for e in self.idempotent_set:
            if np.array_equal(self.table[e], rng) and np.array_equal(self.table[:, e], rng):
                return e
        return None

    @property
    def is_group(self):
        return len(self.idempotent_set) == 1

    @property
    def is_commutative(self):
        return bool(np.array_equal(self.table, self.table.T))

    def component(self, e):
        """Elements of the maximal subgroup with identity ``e``."""
        return [a for a in range(self.order) if self.idem[a] == e]

    def to_dict(self):
        return {"name": self.name, "order": self.order, "table": self.table.tolist()}


def _inverse_candidates(t, a):
    n = len(t)
    return [x for x in range(n) if t[t[a, x], a] == a and t[t[x, a], x] == x]


def verify_clifford(table, name=""):
    """Check every Clifford axiom and return the verified structure.

    Raises the first failing axiom's exception with a witness.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise TableShapeError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise TableShapeError("table entries out of range")
    t = np.ascontiguousarray(t)
    w = kernels.associativity_witness(t)
    if w is not None:
        raise NotAssociative(*w)
    inv = np.empty(n, dtype=np.int64)
    for a in range(n):
        cands = _inverse_candidates(t, a)
        if not cands:
            raise NoInverse(a)
        if len(cands) > 1:
            raise NonUniqueInverse(a, cands)
        inv[a] = cands[0]
    for a in range(n):
        if t[a, inv[a]] != t[inv[a], a]:
            raise NotClifford(a)
    idem = t[np.arange(n), inv]
    idempotents = tuple(int(e) for e in range(n) if t[e, e] == e)
    for e in idempotents:
        for a in range(n):
            if t[e, a] != t[a, e]:
                raise IdempotentNotCentral(e, a)
    return CliffordSemigroup(_frozen(t), _frozen(inv), _frozen(idem), idempotents, name)


def inverses_and_idempotents(S):
    return S.inv, S.idem


def cyclic_group(n, name=None):
    rng = np.arange(n)
    return verify_clifford((rng[:, None] + rng[None, :]) % n, name or f"Z{n}")


def direct_product(S, T, name=""):
    n, m = S.order, T.order
    table = np.empty((n * m, n * m), dtype=np.int64)
    for (a, b), (c, d) in product(product(range(n), range(m)), repeat=2):
        table[a * m + b, c * m + d] = S.table[a, c] * m + T.table[b, d]
    return verify_clifford(table, name)


# ---------------------------------------------------------------------------
# strong semilattices of groups


@dataclass(frozen=True, eq=False)
class StrongSemilatticeSpec:
    """Meet semilattice ``meet``, groups per vertex, and linking maps.

    ``links[(alpha, beta)]`` for ``alpha >= beta`` maps local indices of
    ``groups[alpha]`` to local indices of ``groups[beta]``.  ``elements``
    optionally records which element of a source semigroup each local index
    stands for (filled in by :func:`decompose_to_strong_semilattice`).
    """

    meet: np.ndarray
    groups: tuple
    links: dict
    elements: tuple | None = None
    name: str = ""

    @property
    def vertices(self):
        return list(range(len(self.meet)))

    def geq(self, alpha, beta):
        return int(self.meet[alpha, beta]) == beta

    def comparable_pairs(self):
        """All ``(alpha, beta)`` with ``alpha >= beta``, sorted."""
        k = len(self.meet)
        return [(a, b) for a in range(k) for b in range(k) if self.geq(a, b)]

    def link(self, alpha, beta):
        if alpha == beta:
            return tuple(range(len(self.groups[alpha])))
        return self.links[(alpha, beta)]

    def group_identity(self, alpha):
        return _group_identity(self.groups[alpha])

    @property
    def offsets(self):
        out = [0]
        for g in self.groups:
            out.append(out[-1] + len(g))
        return out

    def global_index(self, alpha, g):
        return self.offsets[alpha] + g

    def locate(self, a):
        """Return ``(alpha, local index)`` of a global element."""
        offs = self.offsets
        for alpha in range(len(self.groups)):
            if offs[alpha] <= a < offs[alpha + 1]:
                return alpha, a - offs[alpha]
        raise IndexError(a)

    def to_dict(self):
        out = {
            "meet": np.asarray(self.meet).tolist(),
            "groups": [{"table": np.asarray(g).tolist()} for g in self.groups],
            "links": [
                {"from": a, "to": b, "images": list(self.links[(a, b)])}
                for (a, b) in sorted(self.links)
            ],
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data):
        meet = np.asarray(data["meet"], dtype=np.int64)
        groups = tuple(np.asarray(g["table"], dtype=np.int64) for g in data["groups"])
        links = {}
        for item in data.get("links", []):
            links[(int(item["from"]), int(item["to"]))] = tuple(int(x) for x in item["images"])
        spec = cls(meet, groups, links, name=data.get("name", ""))
        check_spec(spec)
        return spec


def _group_identity(table):
    t = np.asarray(table)
    n = len(t)
    rng = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], rng) and np.array_equal(t[:, e], rng):
            return e
    return None


def _is_group_table(table):
    try:
        G = verify_clifford(table)
    except CliffordError:
        return False
    return G.is_group


def check_spec(spec):
    """Raise SpecInvariantViolated unless the description is consistent."""
    meet = np.asarray(spec.meet)
    k = len(meet)
    if meet.shape != (k, k) or k == 0:
        raise SpecInvariantViolated("meet table must be a non-empty square array")
    if meet.min() < 0 or meet.max() >= k:
        raise SpecInvariantViolated("meet table entries out of range")
    if not np.array_equal(meet, meet.T):
        raise SpecInvariantViolated("meet is not commutative")
    for a in range(k):
        if meet[a, a] != a:
            raise SpecInvariantViolated(f"meet is not idempotent at vertex {a}")
    for a, b, c in product(range(k), repeat=3):
        if meet[meet[a, b], c] != meet[a, meet[b, c]]:
            raise SpecInvariantViolated(f"meet is not associative at {(a, b, c)}")
    if len(spec.groups) != k:
        raise SpecInvariantViolated("one group table per vertex is required")
    for a, g in enumerate(spec.groups):
        if not _is_group_table(g):
            raise SpecInvariantViolated(f"table at vertex {a} is not a group")
    for (a, b) in spec.links:
        if not spec.geq(a, b):
            raise SpecInvariantViolated(f"link ({a},{b}) between incomparable or reversed vertices")
    for a, b in spec.comparable_pairs():
        if a != b and (a, b) not in spec.links:
            raise SpecInvariantViolated(f"missing link ({a},{b})")
        phi = spec.link(a, b)
        ga, gb = np.asarray(spec.groups[a]), np.asarray(spec.groups[b])
        if len(phi) != len(ga) or min(phi) < 0 or max(phi) >= len(gb):
            raise SpecInvariantViolated(f"link ({a},{b}) has wrong length or range")
        if a == b and tuple(phi) != tuple(range(len(ga))):
            raise SpecInvariantViolated(f"link ({a},{a}) is not the identity")
        for x, y in product(range(len(ga)), repeat=2):
            if phi[ga[x, y]] != gb[phi[x], phi[y]]:
                raise SpecInvariantViolated(f"link ({a},{b}) is not a homomorphism at {(x, y)}")
    for a, b, c in product(range(k), repeat=3):
        if spec.geq(a, b) and spec.geq(b, c):
            pab, pbc, pac = spec.link(a, b), spec.link(b, c), spec.link(a, c)
            if any(pbc[pab[x]] != pac[x] for x in range(len(pab))):
                raise SpecInvariantViolated(f"links do not compose along {a} >= {b} >= {c}")


def build_strong_semilattice(spec, name=""):
    """Glue the groups into one Clifford semigroup, vertex-major indexing."""
    check_spec(spec)
    offs = spec.offsets
    n = offs[-1]
    meet = np.asarray(spec.meet)
    table = np.empty((n, n), dtype=np.int64)
    k = len(spec.groups)
    for a, b in product(range(k), repeat=2):
        m = int(meet[a, b])
        pa, pb = spec.link(a, m), spec.link(b, m)
        gm = np.asarray(spec.groups[m])
        for x in range(len(spec.groups[a])):
            for y in range(len(spec.groups[b])):
                table[offs[a] + x, offs[b] + y] = offs[m] + gm[pa[x], pb[y]]
    return verify_clifford(table, name or spec.name)


def decompose_to_strong_semilattice(S):
    """Recover the semilattice of groups underlying ``S``.

    Vertices are the idempotents in increasing order.  Each group lists its
    identity first, then the remaining members by index; the linking map for
    ``e >= f`` is ``a -> a + f``.
    """
    idems = list(S.idempotent_set)
    k = len(idems)
    pos = {e: i for i, e in enumerate(idems)}
    meet = np.array([[pos[S.op(e, f)] for f in idems] for e in idems], dtype=np.int64)
    members = []
    for e in idems:
        rest = [a for a in S.component(e) if a != e]
        members.append((e,) + tuple(rest))
    local = {}
    for i, mem in enumerate(members):
        for j, a in enumerate(mem):
            local[a] = (i, j)
    groups = []
    for mem in members:
        groups.append(np.array([[local[S.op(x, y)][1] for y in mem] for x in mem], dtype=np.int64))
    links = {}
    for i, j in product(range(k), repeat=2):
        if i != j and meet[i, j] == j:
            f = idems[j]
            links[(i, j)] = tuple(local[S.op(x, f)][1] for x in members[i])
    return StrongSemilatticeSpec(meet, tuple(groups), links, tuple(members), S.name)


def canonical_order(S):
    """Element order used for isomorphism-reduction keys.

    Grouped by idempotent part (idempotents ascending), identity of each
    group first.
    """
    out = []
    for e in S.idempotent_set:
        out.append(e)
        out.extend(a for a in S.component(e) if a != e)
    return out


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class SemigroupMap:
    source_order: int
    target_order: int
    images: tuple = field(default=())

    def __call__(self, a):
        return self.images[a]

    @property
    def is_bijective(self):
        return self.source_order == self.target_order and len(set(self.images)) == self.source_order


def is_homomorphism(S, T, images):
    ts, tt = S.table, T.table
    n = S.order
    return all(images[ts[a, b]] == tt[images[a], images[b]] for a in range(n) for b in range(n))


def _homs_worker(args):
    src, dst, sidem, didem, bijective, first = args
    return kernels.enumerate_homs(src, dst, sidem, didem, bijective, first)


def enumerate_homomorphisms(S, T, kind="all", workers=1):
    """Every homomorphism S -> T (or every isomorphism), sorted by images."""
    if kind not in ("all", "isomorphisms"):
        raise ValueError(f"unknown kind {kind!r}")
    bij = kind == "isomorphisms"
    if bij and S.order != T.order:
        return []
    if workers > 1 and T.order > 1:
        jobs = [(S.table, T.table, S.idem, T.idem, bij, c) for c in range(T.order)]
        found = [f for part in parallel_map(_homs_worker, jobs, workers) for f in part]
    else:
        found = kernels.enumerate_homs(S.table, T.table, S.idem, T.idem, bij, -1)
    return [SemigroupMap(S.order, T.order, f) for f in sorted(set(found))]


def automorphisms(S):
    return enumerate_homomorphisms(S, S, "isomorphisms")


def find_isomorphism(S, T):
    """Return one isomorphism S -> T, or None."""
    if S.order != T.order or len(S.idempotent_set) != len(T.idempotent_set):
        return None
    found = kernels.enumerate_homs(S.table, T.table, S.idem, T.idem, True, -1)
    return SemigroupMap(S.order, T.order, min(found)) if found else None


# ---------------------------------------------------------------------------
# subsets


def _check_subset(S, N):
    members = sorted(set(int(x) for x in N))
    if members and (members[0] < 0 or members[-1] >= S.order):
        raise SubsetOutOfRange(f"subset {members} not inside 0..{S.order - 1}")
    return members


def is_normal_subset(S, N):
    """The four closure conditions generalising normal subgroups.

    A failing verdict names the condition (``"1"``..``"4"``) and witnesses.
    """
    members = _check_subset(S, N)
    inside = np.zeros(S.order, dtype=bool)
    inside[members] = True
    for e in S.idempotent_set:
        if not inside[e]:
            return Verdict(False, "1", (e,))
    for a in members:
        if not inside[S.inv[a]]:
            return Verdict(False, "2", (a,))
    t = S.table
    for a in members:
        for b in range(S.order):
            if inside[t[S.idem[a], b]] and not inside[t[a, b]]:
                return Verdict(False, "3", (a, b))
    for a in range(S.order):
        for b in range(S.order):
            if inside[t[a, b]] and not inside[t[b, a]]:
                return Verdict(False, "4", (a, b))
    return PASS


def closure(S, gens):
    """Smallest subset containing ``gens`` closed under the operation and inverses."""
    cur = set(int(g) for g in gens)
    cur |= {int(S.inv[g]) for g in cur}
    frontier = list(cur)
    while frontier:
        new = []
        snapshot = list(cur)
        for x in frontier:
            for y in snapshot + new:
                for z in (int(S.table[x, y]), int(S.table[y, x])):
                    for w in (z, int(S.inv[z])):
                        if w not in cur:
                            cur.add(w)
                            new.append(w)
        frontier = new
    return frozenset(cur)


def clifford_subsemigroups(S):
    """All non-empty subsets closed under the operation and inverses, sorted."""
    found = set()
    layer = {closure(S, [a]) for a in range(S.order)}
    found |= layer
    while layer:
        nxt = set()
        for K in layer:
            for a in range(S.order):
                if a not in K:
                    C = closure(S, K | {a})
                    if C not in found:
                        nxt.add(C)
        found |= nxt
        layer = nxt
    return sorted((tuple(sorted(K)) for K in found), key=lambda k: (len(k), k))


def is_commutative_subset(S, members):
    t = S.table
    return all(t[a, b] == t[b, a] for a in members for b in members)
