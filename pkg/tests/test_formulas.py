from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

import oracles
from specdet import families as F
from specdet.canon import are_isomorphic
from specdet.formulas import (
    ClosedSpectrum,
    complete_bipartite_cospectral_mate,
    complete_bipartite_is_ds,
    complete_bipartite_spectrum,
    is_am_minimizer,
    join_spectrum_regular,
    multipartite_spectral_bounds_check,
    regular_multipartite_spectrum,
    turan_spectrum,
)
from specdet.graph import GraphError, disjoint_union, empty_graph, join
from specdet.quadratic import QuadraticNumber
from specdet.spectra import SpectrumError, char_poly


def _numpy_spectrum(g):
    a = np.array(oracles.adjacency(g.n, g.edges()), dtype=float)
    return sorted(np.linalg.eigvalsh(a), reverse=True)


# quadratic numbers


def test_quadratic_arithmetic_and_order():
    r2 = QuadraticNumber.sqrt(2)
    assert r2 * r2 == 2
    assert QuadraticNumber.sqrt(8) == r2 * 2
    assert (1 + r2) * (1 - r2) == -1
    assert QuadraticNumber.sqrt(9) == 3 and QuadraticNumber.sqrt(9).is_rational
    vals = [QuadraticNumber.sqrt(2), QuadraticNumber(Fraction(7, 5)), 1 - QuadraticNumber.sqrt(3), QuadraticNumber(-1)]
    assert sorted(vals) == sorted(vals, key=float)
    assert str(6 + 6 * r2) == "6 + 6*sqrt(2)"
    assert QuadraticNumber.from_json((r2 / 3).to_json()) == r2 / 3


def test_quadratic_sign_is_exact_near_zero():
    # 99/70 is a convergent of sqrt(2): the difference is about 7e-5
    d = QuadraticNumber.sqrt(2) - Fraction(99, 70)
    assert d.sign() == -1
    assert (QuadraticNumber.sqrt(2) - Fraction(140, 99)).sign() == 1


# Turan and multipartite


def test_turan_formula_matches_charpoly_and_numpy():
    for n in range(2, 15):
        for k in range(2, n + 1):
            g = F.turan_graph(n, k)
            spec = turan_spectrum(n, k)
            assert spec.to_charpoly().coeffs == char_poly(g, "A").coeffs, (n, k)
            assert np.allclose(spec.numeric(), _numpy_spectrum(g), atol=1e-9)


def test_turan_17_7_closed_form():
    spec = turan_spectrum(17, 7)
    r2 = QuadraticNumber.sqrt(2)
    want = ClosedSpectrum(((-3, 2), (-2, 3), (0, 10), (6 + 6 * r2, 1), (6 - 6 * r2, 1)))
    assert spec == want


def test_turan_rejects_bad_parameters():
    with pytest.raises(GraphError):
        turan_spectrum(5, 6)
    with pytest.raises(GraphError):
        turan_spectrum(5, 1)


def test_regular_multipartite():
    g = F.complete_multipartite([3, 3, 3])
    assert regular_multipartite_spectrum(3, 3).to_charpoly() == char_poly(g, "A")


def test_multipartite_bounds_on_every_small_partition():
    def partitions(n, k, lo=1):
        if k == 1:
            if n >= lo:
                yield [n]
            return
        for first in range(lo, n // k + 1):
            for rest in partitions(n - first, k - 1, first):
                yield [first] + rest

    count = 0
    for n in range(2, 11):
        for k in range(2, n + 1):
            for parts in partitions(n, k):
                assert multipartite_spectral_bounds_check(parts, char_poly(F.complete_multipartite(parts), "A"))
                count += 1
    assert count > 100
    assert not multipartite_spectral_bounds_check([2, 3], char_poly(F.cycle_graph(5), "A"))


# complete bipartite


def test_complete_bipartite_spectrum_matches():
    for p in range(1, 13):
        for q in range(p, 13):
            assert complete_bipartite_spectrum(p, q).to_charpoly() == char_poly(F.complete_bipartite(p, q), "A")


def test_am_minimizer_matches_divisor_search():
    for p in range(1, 13):
        for q in range(p, 13):
            assert is_am_minimizer(p, q) == oracles.am_minimizer_brute(p, q)
            assert complete_bipartite_is_ds(p, q) == is_am_minimizer(p, q)


def test_cospectral_mates():
    mate = complete_bipartite_cospectral_mate(1, 4)
    assert are_isomorphic(mate, disjoint_union(F.cycle_graph(4), empty_graph(1)))
    assert complete_bipartite_cospectral_mate(2, 3) is None
    for p in range(1, 13):
        for q in range(p, 13):
            mate = complete_bipartite_cospectral_mate(p, q)
            if mate is not None:
                assert char_poly(mate, "A") == char_poly(F.complete_bipartite(p, q), "A")


def test_star_is_ds_iff_n_minus_one_prime():
    for n in range(3, 14):
        prime = all((n - 1) % d for d in range(2, n - 1))
        assert complete_bipartite_is_ds(1, n - 1) == prime


# joins


def test_join_of_regular_graphs():
    c4 = F.cycle_graph(4)
    pet = F.petersen_graph()
    s4 = ClosedSpectrum.from_json([{"value": {"a": str(v), "b": "0", "delta": 0}, "mult": m} for v, m in ((2, 1), (0, 2), (-2, 1))])
    sp = ClosedSpectrum(((3, 1), (1, 5), (-2, 4)))
    got = join_spectrum_regular(s4, 2, 4, sp, 3, 10)
    assert got.to_charpoly() == char_poly(join(c4, pet), "A")
    with pytest.raises(SpectrumError):
        join_spectrum_regular(s4, 3, 4, sp, 3, 10)
