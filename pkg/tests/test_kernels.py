"""Both kernel backends must give identical answers."""

import numpy as np
import pytest

from rotabrace.kernels import BACKEND, available_backends
from rotabrace.rota_baxter import _search_plan
from rotabrace.ybe import element_invariants, random_pair_map, solution_from_brace

BACKENDS = available_backends()


def test_backend_selected():
    assert BACKEND in BACKENDS


def test_compiled_backend_is_built():
    # the package is meant to ship with the extension; the fallback is for
    # environments without a compiler
    assert "cython" in BACKENDS


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def test_associativity_witness(backend, carriers):
    for S in carriers.values():
        assert backend.associativity_witness(S.table) is None
    bad = np.array([[1, 0], [0, 0]])
    assert backend.associativity_witness(bad) == BACKENDS["python"].associativity_witness(bad)


def test_rb_witness(backend, carriers):
    S = carriers["Z4"]
    ref = BACKENDS["python"]
    for images in ([0, 1, 2, 3], [0, 1, 0, 0], [1, 1, 1, 1], [0, 3, 2, 1]):
        images = np.array(images)
        assert backend.rb_witness(S.table, S.inv, S.idem, images) == ref.rb_witness(S.table, S.inv, S.idem, images)


def test_enumerate_rb(backend, carriers):
    ref = BACKENDS["python"]
    for S in carriers.values():
        seq, cands = _search_plan(S)
        got = sorted(backend.enumerate_rb(S.table, S.inv, S.idem, seq, cands, -1))
        assert got == sorted(ref.enumerate_rb(S.table, S.inv, S.idem, seq, cands, -1))
        split = sorted(r for c in cands[seq[0]] for r in backend.enumerate_rb(S.table, S.inv, S.idem, seq, cands, c))
        assert split == got


def test_enumerate_homs(backend, carriers):
    ref = BACKENDS["python"]
    for S in carriers.values():
        for T in carriers.values():
            if S.order * T.order > 24:
                continue
            for bij in (False, True):
                got = sorted(backend.enumerate_homs(S.table, T.table, S.idem, T.idem, bij, -1))
                assert got == sorted(ref.enumerate_homs(S.table, T.table, S.idem, T.idem, bij, -1))


def test_braid_witness(backend, operator_braces):
    ref = BACKENDS["python"]
    for seed in range(20):
        r = random_pair_map(3, seed)
        assert backend.braid_witness(r.first, r.second) == ref.braid_witness(r.first, r.second)
    for *_, B in operator_braces:
        r = solution_from_brace(B)
        assert backend.braid_witness(r.first, r.second) is None


def test_find_conjugating_bijection(backend, operator_braces):
    ref = BACKENDS["python"]
    sols = [solution_from_brace(B) for *_, B in operator_braces if B.order == 6]
    for r in sols:
        for s in sols:
            ir, is_ = element_invariants(r), element_invariants(s)
            cands = [[c for c in range(6) if is_[c] == ir[a]] for a in range(6)]
            got = backend.find_conjugating_bijection(r.first, r.second, s.first, s.second, cands)
            want = ref.find_conjugating_bijection(r.first, r.second, s.first, s.second, cands)
            assert (None if got is None else tuple(got)) == (None if want is None else tuple(want))


def test_pure_python_switch():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from rotabrace.kernels import BACKEND; print(BACKEND)"],
        env={**__import__("os").environ, "ROTABRACE_PURE_PYTHON": "1"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
