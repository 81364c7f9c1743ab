import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlap_shor.errors import DimensionError, PauliParseError
from overlap_shor.pauli import (
    PauliOperator,
    commutes,
    format_pauli,
    gf2_nullspace,
    gf2_rank,
    in_span,
    iter_paulis,
    parse_pauli,
    product,
    symplectic_matrix,
    weight,
)


def P(text, n=2):
    return parse_pauli(text, n)


@st.composite
def paulis(draw, n=None):
    n = draw(st.integers(1, 12)) if n is None else n
    x = draw(st.integers(0, 2**n - 1))
    z = draw(st.integers(0, 2**n - 1))
    return PauliOperator(n, x, z)


@st.composite
def pauli_triples(draw):
    n = draw(st.integers(1, 12))
    return tuple(draw(paulis(n)) for _ in range(3))


class TestCommutes:
    def test_same_qubit_x_z(self):
        assert commutes(P("X0"), P("Z0")) is False

    def test_disjoint(self):
        assert commutes(P("X0"), P("Z1")) is True

    def test_y_z(self):
        assert commutes(P("Y0"), P("Z0")) is False

    def test_two_anticommuting_positions(self):
        assert commutes(P("X0Z1"), P("Z0X1"))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            commutes(parse_pauli("X0", 2), parse_pauli("X0", 3))

    @given(pauli_triples())
    def test_symmetric_and_bilinear(self, ops):
        p, q, r = ops
        assert commutes(p, q) == commutes(q, p)
        assert commutes(p, product(p, p))
        assert commutes(product(p, q), r) == (commutes(p, r) == commutes(q, r))


class TestProduct:
    def test_x_times_z_is_y(self):
        assert product(P("X0"), P("Z0")) == P("Y0")

    def test_xor_of_supports(self):
        assert product(parse_pauli("X0X1", 3), parse_pauli("X1X2", 3)) == parse_pauli("X0X2", 3)

    @given(paulis())
    def test_involution(self, p):
        assert weight(p * p) == 0

    @given(pauli_triples())
    def test_weight_subadditive(self, ops):
        p, q, _ = ops
        assert weight(product(p, q)) <= weight(p) + weight(q)


def test_weights():
    assert weight(PauliOperator(4)) == 0
    assert weight(P("Y0")) == 1
    assert weight(parse_pauli("X0X1X2X3X4X5", 9)) == 6


class TestParseFormat:
    def test_generator_g1(self):
        g1 = parse_pauli("X0X1X2X6X7X8", 9)
        assert list(g1.x_bits) == [1, 1, 1, 0, 0, 0, 1, 1, 1]
        assert not g1.z

    def test_identity(self):
        p = parse_pauli("I", 5)
        assert p == PauliOperator(5) and format_pauli(p) == "I"

    def test_canonical_order(self):
        assert format_pauli(parse_pauli("Z7Z6", 9)) == "Z6Z7"

    @pytest.mark.parametrize("bad", ["Q0", "X9", "X1Z1", "X", "X0 Z1", ""])
    def test_rejects(self, bad):
        with pytest.raises(PauliParseError):
            parse_pauli(bad, 9)

    def test_repeated_identical_token_ok(self):
        assert parse_pauli("X1X1", 3) == parse_pauli("X1", 3)

    @given(paulis())
    def test_round_trip(self, p):
        s = format_pauli(p)
        assert parse_pauli(s, p.n) == p
        assert format_pauli(parse_pauli(s, p.n)) == s

    def test_symplectic_row(self):
        p = parse_pauli("Y0Z2", 3)
        assert p.symplectic_string() == "100" + "101"
        assert PauliOperator.from_symplectic(p.symplectic()) == p


def test_iter_paulis_counts_and_order():
    ops = list(iter_paulis(4, 2))
    assert len(ops) == 6 * 9
    keys = [p.sort_key() for p in ops]
    assert keys == sorted(keys)
    assert len(set(ops)) == len(ops)


def _span_size(rows):
    """Count distinct GF(2) combinations by enumeration."""
    rows = [tuple(int(b) for b in r) for r in rows]
    seen = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        v = tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % 2 for i in range(len(rows[0])))
        seen.add(v)
    return len(seen)


class TestGF2:
    def test_identity_rank(self):
        assert gf2_rank(np.eye(3, dtype=np.uint8)) == 3

    def test_zero_in_span(self):
        m = np.array([[1, 0, 1], [0, 1, 1]])
        assert in_span([0, 0, 0], m)

    def test_z0z1_in_shor_z_span(self):
        gens = [parse_pauli(s, 9) for s in ["Z0Z1", "Z1Z2", "Z3Z4", "Z4Z5", "Z6Z7", "Z7Z8"]]
        v = parse_pauli("Z0Z1", 9).symplectic()
        assert in_span(v, symplectic_matrix(gens))
        assert in_span(parse_pauli("Z0Z2", 9).symplectic(), symplectic_matrix(gens))
        assert not in_span(parse_pauli("Z0", 9).symplectic(), symplectic_matrix(gens))

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            in_span([1, 0], np.eye(3, dtype=np.uint8))

    @settings(max_examples=60)
    @given(st.integers(1, 10), st.integers(1, 8), st.data())
    def test_rank_matches_span_enumeration(self, rows, cols, data):
        m = np.array(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)))
        assert 2 ** gf2_rank(m) == _span_size(m)
        assert gf2_rank(gf2_rank_idempotent(m)) == gf2_rank(m)
        ns = gf2_nullspace(m)
        assert ns.shape[0] == cols - gf2_rank(m)
        assert not ((m.astype(int) @ ns.T.astype(int)) % 2).any()


def gf2_rank_idempotent(m):
    from overlap_shor.pauli import gf2_rref

    r1, _ = gf2_rref(m)
    r2, _ = gf2_rref(r1)
    assert (r1 == r2).all()
    return r1
