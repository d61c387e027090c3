import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import sparse

from fanout_forge.errors import DimensionError, ResourceGuardError, UnsupportedContextError
from fanout_forge.pauli import (
    Context,
    PauliString,
    TritString,
    build_context,
    commutes,
    context_generators,
    context_intersection_check,
    enumerate_all_contexts,
    gamma_conjugate,
    gamma_conjugate_letter,
    index_of_observable,
    observable_from_index,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
S = np.diag([1, 1j])
GAMMA = {0: I2, 1: H @ Z @ S, 2: S @ H}
LETTER_MATRIX = {"X": X, "Y": Y, "Z": Z}


def kron_qubits(mats):
    # qubit 0 is the least significant factor
    return reduce(lambda acc, m: np.kron(m, acc), mats, np.eye(1))


def pauli_strings(max_n=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.builds(
            PauliString,
            st.just(n),
            st.integers(0, 2**n - 1),
            st.integers(0, 2**n - 1),
            st.integers(0, 3),
        )
    )


# --------------------------------------------------------------------------
# PauliString basics


def test_label_round_trip():
    for label in ["XZYI", "-XX", "+iZ", "-iYI", "I"]:
        p = PauliString.from_label(label)
        assert PauliString.from_label(p.to_label()) == p
    assert PauliString.from_label("+XY").to_label() == "XY"


def test_bits_follow_qubit_order():
    p = PauliString.from_label("XZY")
    assert p.x_bits == [1, 0, 1]
    assert p.z_bits == [0, 1, 1]


def test_matrix_of_single_letters():
    for letter, mat in LETTER_MATRIX.items():
        np.testing.assert_array_equal(PauliString.from_label(letter).to_matrix(), mat)
    np.testing.assert_array_equal(PauliString.from_label("-iY").to_matrix(), -1j * Y)


@given(st.data())
def test_product_matches_matrix_product(data):
    n = data.draw(st.integers(1, 3))
    p = data.draw(pauli_strings(n).filter(lambda q: q.n == n))
    q = data.draw(pauli_strings(n).filter(lambda q: q.n == n))
    np.testing.assert_allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix(), atol=1e-12)


def test_single_qubit_products_exhaustive():
    for a, b in itertools.product("IXYZ", repeat=2):
        p, q = PauliString.from_label(a), PauliString.from_label(b)
        np.testing.assert_allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix(), atol=1e-12)


@given(pauli_strings(4), st.data())
def test_product_associative(p, data):
    same = pauli_strings(4).filter(lambda q: q.n == p.n)
    q, r = data.draw(same), data.draw(same)
    assert (p * q) * r == p * (q * r)


def test_observable_flags():
    assert PauliString.from_label("XYZ").is_observable
    assert PauliString.from_label("-XYZ").is_observable
    assert not PauliString.from_label("XIZ").is_observable
    assert not PauliString.from_label("iXYZ").is_observable


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        PauliString.from_label("XX") * PauliString.from_label("X")
    with pytest.raises(DimensionError):
        commutes(PauliString.from_label("XX"), PauliString.from_label("X"))


# --------------------------------------------------------------------------
# Gamma rotations


@pytest.mark.parametrize("letter,b,expected", [("X", 2, "Z"), ("Z", 0, "Z"), ("Y", 1, "Z")])
def test_gamma_letter_examples(letter, b, expected):
    assert gamma_conjugate_letter(letter, b) == expected


def test_gamma_letter_table_matches_matrices():
    for b, letter in itertools.product(range(3), "XYZ"):
        g = GAMMA[b]
        image = g @ LETTER_MATRIX[letter] @ g.conj().T
        np.testing.assert_allclose(image, LETTER_MATRIX[gamma_conjugate_letter(letter, b)], atol=1e-12)


@pytest.mark.parametrize(
    "label,beta,expected",
    [("ZZ", "00", "ZZ"), ("ZZ", "11", "XX"), ("XYZ", "222", "ZXY")],
)
def test_gamma_conjugate_examples(label, beta, expected):
    assert gamma_conjugate(PauliString.from_label(label), TritString.parse(beta)).to_label() == expected


def test_gamma_conjugate_matches_dense_conjugation():
    for label in ["XYZ", "-YYX", "ZIX"]:
        p = PauliString.from_label(label)
        for beta in itertools.product(range(3), repeat=3):
            g = kron_qubits([GAMMA[b] for b in beta])
            want = g @ p.to_matrix() @ g.conj().T
            got = gamma_conjugate(p, TritString(beta)).to_matrix()
            np.testing.assert_allclose(got, want, atol=1e-12)


@given(pauli_strings(6), st.data())
def test_gamma_inverse_round_trip(p, data):
    beta = TritString(tuple(data.draw(st.lists(st.integers(0, 2), min_size=p.n, max_size=p.n))))
    assert gamma_conjugate(gamma_conjugate(p, beta), beta.inverse()) == p


def test_gamma_length_mismatch():
    with pytest.raises(DimensionError):
        gamma_conjugate(PauliString.from_label("XX"), TritString.parse("0"))


# --------------------------------------------------------------------------
# observable indexing


def test_trit_round_trip():
    for n in range(1, 6):
        for v in range(3**n):
            t = TritString.from_int(v, n)
            assert t.value == v
            assert TritString.parse(str(t)) == t
    assert TritString.from_int(5, 3).trits == (0, 1, 2)


@pytest.mark.parametrize("beta,expected", [(0, "ZZZ"), (1, "ZZX"), (2, "ZZY"), (3, "ZXZ"), (26, "YYY")])
def test_observable_from_index_examples(beta, expected):
    p = observable_from_index(3, beta)
    assert p.to_label() == expected
    assert p.phase == 0


def test_observable_index_is_bijection():
    for n in (1, 2, 3, 4):
        seen = {observable_from_index(n, b) for b in range(3**n)}
        assert len(seen) == 3**n
        assert all(p.is_observable for p in seen)
        assert all(index_of_observable(observable_from_index(n, b)) == b for b in range(3**n))


# --------------------------------------------------------------------------
# commutation


def _dense_commute(p, q):
    a, b = sparse.csr_matrix(p.to_matrix()), sparse.csr_matrix(q.to_matrix())
    return abs(a @ b - b @ a).max() < 1e-12


@pytest.mark.parametrize(
    "a,b,expected", [("XX", "ZZ", True), ("XI", "ZI", False), ("ZZZZ", "XXYY", True)]
)
def test_commutes_examples(a, b, expected):
    assert commutes(PauliString.from_label(a), PauliString.from_label(b)) is expected


def test_commutes_exhaustive_small():
    for n in (1, 2, 3):
        paulis = [PauliString.from_label("".join(w)) for w in itertools.product("IXYZ", repeat=n)]
        mats = {p: p.to_matrix() for p in paulis}
        for p, q in itertools.product(paulis, repeat=2):
            dense = np.allclose(mats[p] @ mats[q], mats[q] @ mats[p])
            assert commutes(p, q) == dense


def test_commutes_random_pairs(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        p = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)))
        q = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)))
        assert commutes(p, q) == _dense_commute(p, q)


# --------------------------------------------------------------------------
# contexts


def _labels(ctx):
    return {p.to_label() for p in build_context(ctx)}


def test_context_n2_examples():
    assert _labels(Context.base(2, 0)) == {"ZZ", "YY", "XX"}
    assert _labels(Context.base(2, 1)) == {"ZZ", "XY", "YX"}


def test_context_n4_example():
    expected = {"ZZZZ", "YYYY", "XXYY", "XYXY", "XYYX", "YXXY", "YXYX", "YYXX", "XXXX"}
    assert _labels(Context.base(4, 0)) == expected
    # matrix oracle for pairwise commutation
    mats = [PauliString.from_label(lab).to_matrix() for lab in expected]
    for a, b in itertools.combinations(mats, 2):
        np.testing.assert_allclose(a @ b, b @ a, atol=1e-12)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_context_size(n):
    for s in (0, 1):
        ctx = Context(n, s, TritString.from_int((7 * n + s) % 3**n, n))
        elems = build_context(ctx)
        assert len(elems) == 2 ** (n - 1) + 1
        assert len(set(elems)) == len(elems)
        assert all(p.is_observable and p.phase == 0 for p in elems)


def _all_commute(elems):
    return all(p.commutes(q) for p, q in itertools.combinations(elems, 2))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_every_context_commutes_exhaustive(n):
    for s in (0, 1):
        for b in range(3**n):
            assert _all_commute(build_context(Context(n, s, TritString.from_int(b, n))))


def test_n8_contexts_commute_sample(rng):
    for _ in range(20):
        ctx = Context(8, int(rng.integers(2)), TritString.from_int(int(rng.integers(3**8)), 8))
        assert _all_commute(build_context(ctx))


def test_generators_multiply_into_context():
    for ctx in [Context.base(4, 0), Context(4, 1, TritString.parse("2101")), Context(6, 1, TritString.parse("012210"))]:
        gens = context_generators(ctx)
        assert _all_commute(gens)
        members = set(build_context(ctx))
        assert gens[0] in members
        zz = reduce(lambda a, b: a * b, gens[1:])
        assert zz in members  # product of all Z-pairs is the rotated Z^n


@pytest.mark.parametrize("n", [1, 3, 5])
def test_odd_context_rejected(n):
    with pytest.raises(UnsupportedContextError):
        Context.base(n)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_intersection_is_all_z(n):
    assert context_intersection_check(n) == PauliString(n, 0, 2**n - 1)


def test_enumeration_counts():
    assert enumerate_all_contexts(4) == 162
    assert enumerate_all_contexts(6) == 1458


def test_enumeration_n2_recorded():
    # uniqueness is only claimed from n=4 on; n=2 collapses heavily (18 labels -> 6 sets)
    count = enumerate_all_contexts(2)
    assert 1 <= count <= 18
    assert count == 6


def test_enumeration_guard():
    with pytest.raises(ResourceGuardError):
        enumerate_all_contexts(10)


def test_context_json_round_trip():
    ctx = Context(4, 1, TritString.parse("2011"))
    text = ctx.to_json()
    assert Context.from_json(text) == ctx
