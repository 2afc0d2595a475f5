"""Rota-Baxter operators on finite Clifford semigroups.

A self-map R of (S, +) is a Rota-Baxter operator when

    R(a) + R(b) = R(a + R(a) + b - R(a))    and    a + R(a)^0 = a

for all a, b.  This module checks those identities, enumerates all solutions
on small carriers, and builds operators from strong semilattices, exact
factorizations and endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from ._parallel import parallel_map
from .clifford import (
    PASS,
    CliffordSemigroup,
    SemigroupMap,
    Verdict,
    build_strong_semilattice,
    canonical_order,
    clifford_subsemigroups,
    enumerate_homomorphisms,
    is_commutative_subset,
    is_homomorphism,
    is_normal_subset,
    verify_clifford,
)

DEFAULT_MAX_ORDER = 8
DEFAULT_MAX_FACTORIZATION_ORDER = 12


class CarrierTooLarge(ValueError):
    def __init__(self, order, cap):
        super().__init__(f"carrier of order {order} exceeds the cap {cap}")
        self.order = order
        self.cap = cap


class NotRotaBaxter(ValueError):
    def __init__(self, verdict):
        super().__init__(f"not a Rota-Baxter operator: {verdict.reason} fails at {verdict.witness}")
        self.verdict = verdict


class ConditionViolated(ValueError):
    """Component operators do not commute with a linking map."""

    def __init__(self, alpha, beta, a):
        super().__init__(f"R_beta phi != phi R_alpha for alpha={alpha}, beta={beta}, at local element {a}")
        self.alpha = alpha
        self.beta = beta
        self.element = a


class NotAMonoid(ValueError):
    pass


class NotAGroup(ValueError):
    pass


def is_rota_baxter(S, images):
    """Verdict on both identities; the witness is ``(a,)`` or ``(a, b)``."""
    images = np.asarray(images, dtype=np.int64)
    if images.shape != (S.order,) or images.min() < 0 or images.max() >= S.order:
        return Verdict(False, "range", ())
    w = kernels.rb_witness(S.table, S.inv, S.idem, images)
    if w is None:
        return PASS
    kind, a, b = w
    if kind == 2:
        return Verdict(False, "RB2", (a,))
    return Verdict(False, "RB1", (a, b))


@dataclass(frozen=True, eq=False)
class RotaBaxterOperator:
    carrier: CliffordSemigroup
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        verdict = is_rota_baxter(self.carrier, self.images)
        if not verdict:
            raise NotRotaBaxter(verdict)

    def __call__(self, a):
        return self.images[a]

    def __eq__(self, other):
        if not isinstance(other, RotaBaxterOperator):
            return NotImplemented
        return self.images == other.images and self.carrier == other.carrier

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"RotaBaxterOperator({self.carrier.name or '?'}, {list(self.images)})"

    def image_set(self):
        return sorted(set(self.images))

    def opposite(self):
        return opposite_operator(self.carrier, self)

    def to_dict(self):
        return {"carrier": self.carrier.name, "images": list(self.images)}


def _search_plan(S):
    seq = canonical_order(S)
    idems = set(S.idempotent_set)
    t, e = S.table, S.idem
    cands = []
    for a in range(S.order):
        row = [c for c in range(S.order) if t[a, e[c]] == a and (a not in idems or c in idems)]
        cands.append(row)
    return seq, cands


def _rb_worker(args):
    table, inv, idem, seq, cands, first = args
    return kernels.enumerate_rb(table, inv, idem, seq, cands, first)


def enumerate_rota_baxter(S, cap=DEFAULT_MAX_ORDER, workers=1):
    """Every Rota-Baxter operator on S, sorted by images."""
    if S.order > cap:
        raise CarrierTooLarge(S.order, cap)
    seq, cands = _search_plan(S)
    if workers > 1:
        jobs = [(S.table, S.inv, S.idem, seq, cands, c) for c in cands[seq[0]]]
        found = [r for part in parallel_map(_rb_worker, jobs, workers) for r in part]
    else:
        found = kernels.enumerate_rb(S.table, S.inv, S.idem, seq, cands, -1)
    return [RotaBaxterOperator(S, r) for r in sorted(set(found))]


def elementary_operators(S):
    """The operators a -> a^0 and a -> -a."""
    return (
        RotaBaxterOperator(S, S.idem.tolist()),
        RotaBaxterOperator(S, S.inv.tolist()),
    )


def opposite_images(S, images):
    return tuple(S.op(int(S.inv[a]), images[int(S.inv[a])]) for a in range(S.order))


def opposite_operator(S, R):
    """a -> -a + R(-a)."""
    return RotaBaxterOperator(S, opposite_images(S, R.images))


def opposite_variant_report(S, R):
    """Compare the two opposite-operator formulas that appear in the literature.

    ``a -> -a + R(-a)`` is the one used throughout the package; the variant
    ``a -> -a + R(a)`` is evaluated only for diagnostics.
    """
    main = opposite_images(S, R.images)
    variant = tuple(S.op(int(S.inv[a]), R.images[a]) for a in range(S.order))
    return {
        "carrier": S.name,
        "operator": list(R.images),
        "opposite": list(main),
        "opposite_is_rota_baxter": bool(is_rota_baxter(S, main)),
        "variant": list(variant),
        "variant_is_rota_baxter": bool(is_rota_baxter(S, variant)),
        "formulas_agree": main == variant,
    }


def is_equivalent_via(phi, R, T):
    """True when phi(R(a)) = T(phi(a)) for all a."""
    return all(phi[R.images[a]] == T.images[phi[a]] for a in range(len(phi)))


def equivalent_operators(R, T):
    """An isomorphism phi with R = phi^-1 T phi, or None."""
    S, U = R.carrier, T.carrier
    if S.order != U.order:
        return None
    for phi in enumerate_homomorphisms(S, U, "isomorphisms"):
        if is_equivalent_via(phi.images, R, T):
            return phi
    return None


def conjugate_operator(R, phi, target):
    """Transport R along the isomorphism phi: T = phi R phi^-1."""
    inv = [0] * len(phi.images)
    for a, b in enumerate(phi.images):
        inv[b] = a
    return RotaBaxterOperator(target, [phi.images[R.images[inv[b]]] for b in range(target.order)])


def operator_orbits(operators, automorphisms=None):
    """Partition operators on one carrier into equivalence classes.

    Classes are sorted by their smallest member; members by images.
    """
    if not operators:
        return []
    S = operators[0].carrier
    if automorphisms is None:
        automorphisms = enumerate_homomorphisms(S, S, "isomorphisms")
    index = {R.images: i for i, R in enumerate(operators)}
    seen = set()
    classes = []
    for R in operators:
        if R.images in seen:
            continue
        orbit = set()
        for phi in automorphisms:
            T = tuple(phi.images[R.images[b]] for b in _inverse_perm(phi.images))
            orbit.add(T)
        members = sorted(o for o in orbit if o in index)
        seen.update(members)
        classes.append([operators[index[m]] for m in members])
    return classes


def _inverse_perm(images):
    inv = [0] * len(images)
    for a, b in enumerate(images):
        inv[b] = a
    return inv


# ---------------------------------------------------------------------------
# strong semilattices


def glue_components(spec, components):
    """Images on the glued semigroup of the per-vertex maps, with no checks."""
    offs = spec.offsets
    out = []
    for alpha, comp in enumerate(components):
        out.extend(offs[alpha] + int(x) for x in comp)
    return tuple(out)


def component_condition(spec, components):
    """First ``(alpha, beta, x)`` where R_beta phi != phi R_alpha, else None."""
    for alpha, beta in spec.comparable_pairs():
        if alpha == beta:
            continue
        phi = spec.link(alpha, beta)
        ra, rb = components[alpha], components[beta]
        for x in range(len(phi)):
            if rb[phi[x]] != phi[ra[x]]:
                return (alpha, beta, x)
    return None


def strong_operator_from_components(spec, components, carrier=None):
    """Glue per-vertex group operators into an operator on the whole semigroup.

    Raises ConditionViolated when some linking map does not intertwine the
    component operators.
    """
    for alpha, comp in enumerate(components):
        G = verify_clifford(spec.groups[alpha])
        verdict = is_rota_baxter(G, comp)
        if not verdict:
            raise NotRotaBaxter(verdict)
    bad = component_condition(spec, components)
    if bad is not None:
        raise ConditionViolated(*bad)
    S = carrier if carrier is not None else build_strong_semilattice(spec)
    return RotaBaxterOperator(S, glue_components(spec, components))


# ---------------------------------------------------------------------------
# exact factorizations


@dataclass(frozen=True)
class FactorizationPair:
    U: tuple
    V: tuple
    decomposition: tuple  # decomposition[a] == (u_a, v_a)

    def u(self, a):
        return self.decomposition[a][0]

    def v(self, a):
        return self.decomposition[a][1]


def find_exact_factorizations(S, cap=DEFAULT_MAX_FACTORIZATION_ORDER):
    """All pairs (U, V) of Clifford subsemigroups with unique sums a = u + v."""
    if S.order > cap:
        raise CarrierTooLarge(S.order, cap)
    if S.identity is None:
        raise NotAMonoid(f"{S.name or 'carrier'} has no identity element")
    subs = clifford_subsemigroups(S)
    n = S.order
    out = []
    for U in subs:
        for V in subs:
            if len(U) * len(V) != n:
                continue
            dec = {}
            for u in U:
                for v in V:
                    a = S.op(u, v)
                    if a in dec:
                        break
                    dec[a] = (u, v)
                else:
                    continue
                break
            if len(dec) == n:
                out.append(FactorizationPair(U, V, tuple(dec[a] for a in range(n))))
    return out


def rb_from_exact_factorization(S, pair):
    """The two operators a -> -v_a and a -> u_a^0 - v_a."""
    R = [int(S.inv[pair.v(a)]) for a in range(S.order)]
    T = [S.op(int(S.idem[pair.u(a)]), int(S.inv[pair.v(a)])) for a in range(S.order)]
    return RotaBaxterOperator(S, R), RotaBaxterOperator(S, T)


# ---------------------------------------------------------------------------
# Rota-Baxter endomorphisms


def is_endomorphism(S, images):
    return is_homomorphism(S, S, images)


def has_commutative_image(S, images):
    return is_commutative_subset(S, sorted(set(images)))


def is_idempotent_map(images):
    return all(images[images[a]] == images[a] for a in range(len(images)))


def semilattice_endomorphisms(meet, inflationary=False):
    """Maps h with h(a ^ b) = h(a) ^ h(b); optionally also a <= h(a)."""
    meet = np.asarray(meet)
    k = len(meet)
    out = []
    for h in product(range(k), repeat=k):
        if inflationary and any(meet[a, h[a]] != a for a in range(k)):
            continue
        if all(h[meet[a, b]] == meet[h[a], h[b]] for a in range(k) for b in range(k)):
            out.append(h)
    return out


def commutative_rb_endomorphisms(spec):
    """Every endomorphism of the glued semigroup that is Rota-Baxter with commutative image.

    Built from inflationary semilattice endomorphisms h and abelian
    homomorphisms f_alpha: G_alpha -> G_h(alpha) satisfying
    f_beta phi_{alpha,beta} = phi_{h(alpha),h(beta)} f_alpha.
    """
    S = build_strong_semilattice(spec)
    k = len(spec.groups)
    groups = [verify_clifford(g) for g in spec.groups]
    offs = spec.offsets
    pairs = [(a, b) for a, b in spec.comparable_pairs() if a != b]
    hom_cache = {}

    def abelian_homs(alpha, beta):
        key = (alpha, beta)
        if key not in hom_cache:
            G, H = groups[alpha], groups[beta]
            hom_cache[key] = [
                f.images for f in enumerate_homomorphisms(G, H) if is_commutative_subset(H, set(f.images))
            ]
        return hom_cache[key]

    found = set()
    for h in semilattice_endomorphisms(spec.meet, inflationary=True):
        choice = [None] * k

        def consistent(upto):
            for a, b in pairs:
                if a > upto or b > upto:
                    continue
                fa, fb = choice[a], choice[b]
                phi = spec.link(a, b)
                psi = spec.link(h[a], h[b])
                if any(fb[phi[x]] != psi[fa[x]] for x in range(len(phi))):
                    return False
            return True

        def walk(alpha):
            if alpha == k:
                found.add(tuple(offs[h[a]] + choice[a][x] for a in range(k) for x in range(len(choice[a]))))
                return
            for f in abelian_homs(alpha, h[alpha]):
                choice[alpha] = f
                if consistent(alpha):
                    walk(alpha + 1)
            choice[alpha] = None

        walk(0)
    return [RotaBaxterOperator(S, r) for r in sorted(found)]


def idempotent_rb_endomorphisms(G):
    """Every idempotent Rota-Baxter endomorphism of a group.

    Each one is determined by a normal subgroup N with abelian quotient and a
    subgroup that meets every coset of N exactly once; R(g) is the
    representative of N + g.
    """
    if not G.is_group:
        raise NotAGroup(f"{G.name or 'carrier'} has {len(G.idempotent_set)} idempotents")
    n = G.order
    subgroups = clifford_subsemigroups(G)
    normal = [N for N in subgroups if is_normal_subset(G, N)]
    found = set()
    for N in normal:
        Nset = set(N)
        if any(G.op(g, h, int(G.inv[g]), int(G.inv[h])) not in Nset for g in range(n) for h in range(n)):
            continue
        cosets = {}
        for g in range(n):
            cosets.setdefault(frozenset(G.op(x, g) for x in N), g)
        for T in subgroups:
            if len(T) * len(N) != n:
                continue
            rep = {}
            for coset in cosets:
                hit = [s for s in T if s in coset]
                if len(hit) != 1:
                    break
                for g in coset:
                    rep[g] = hit[0]
            else:
                found.add(tuple(rep[g] for g in range(n)))
    return [RotaBaxterOperator(G, r) for r in sorted(found)]


def image_is_clifford_subsemigroup(S, images):
    im = set(images)
    return all(S.op(a, b) in im for a in im for b in im) and all(int(S.inv[a]) in im for a in im)


def as_map(R):
    return SemigroupMap(R.carrier.order, R.carrier.order, R.images)


def structural_identities(S, images):
    """Check the identities every Rota-Baxter operator satisfies.

    The reason names the first failing identity; the witness is the element.
    """
    R = [int(x) for x in images]
    e, inv = S.idem, S.inv
    checks = (
        ("R(a) = R(a) + R(a^0)", lambda a: R[a] == S.op(R[a], R[e[a]])),
        ("a = a + R(a^0)", lambda a: a == S.op(a, R[e[a]])),
        ("-R(a) = R(-R(a) - a + R(a))", lambda a: inv[R[a]] == R[S.op(int(inv[R[a]]), int(inv[a]), R[a])]),
        ("R(a^0) = R(a)^0", lambda a: R[e[a]] == e[R[a]]),
        ("R(E) in E", lambda a: a not in S.idempotent_set or R[a] in S.idempotent_set),
    )
    for reason, holds in checks:
        for a in range(S.order):
            if not holds(a):
                return Verdict(False, reason, (a,))
    if not image_is_clifford_subsemigroup(S, R):
        return Verdict(False, "image closed under + and -", ())
    return PASS
