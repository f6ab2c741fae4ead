from fractions import Fraction

from hypothesis import given, settings, strategies as st

from thh._intlin import (SmithForm, SubQuot, frac_mod, group_invariants,
                         p_part, row_hermite, row_kernel, solve_in_lattice,
                         xgcd)

small_int = st.integers(-9, 9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n),
                           min_size=1, max_size=max_rows))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g == abs(__import__("math").gcd(a, b)) or g == x * a + y * b
    assert x * a + y * b == g
    assert g >= 0


@given(st.integers(1, 10**6), st.sampled_from([2, 3, 5]))
def test_p_part_divides_and_is_a_p_power(d, p):
    q = p_part(d, p)
    assert d % q == 0
    assert (d // q) % p != 0
    while q % p == 0:
        q //= p
    assert q == 1


@settings(max_examples=60)
@given(matrices())
def test_smith_form_diagonalizes(rows):
    m, n = len(rows), len(rows[0])
    sf = SmithForm(rows, n)
    # P * A * Q equals the recorded diagonal matrix D
    prod = [[sum(sf.P[i][k] * rows[k][j] for k in range(m)) for j in range(n)]
            for i in range(m)]
    prod = [[sum(prod[i][k] * sf.Q[k][j] for k in range(n)) for j in range(n)]
            for i in range(m)]
    assert prod == sf.D
    for i in range(m):
        for j in range(n):
            if i != j:
                assert sf.D[i][j] == 0
    nonzero = [abs(d) for d in sf.diagonal() if d]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


@settings(max_examples=60)
@given(matrices())
def test_row_hermite_spans_the_rows(rows):
    n = len(rows[0])
    basis, pivots = row_hermite(rows, n)
    for r in rows:
        assert solve_in_lattice(basis, pivots, r, 2) is not None


@settings(max_examples=60)
@given(matrices())
def test_row_kernel_annihilates(rows):
    n = len(rows[0])
    ker = row_kernel(rows, n)
    # kernel of the transpose action: combinations of rows that vanish
    for comb in ker:
        for j in range(n):
            assert sum(c * rows[i][j] for i, c in enumerate(comb)) == 0


def test_group_invariants_known_examples():
    # Z^2 / <(2,0),(0,3)> = Z/2 + Z/3
    assert group_invariants([[2, 0], [0, 3]], 2, 2) == (0, [2])
    assert group_invariants([[2, 0], [0, 3]], 2, 3) == (0, [3])
    # Z^2 / <(2,2)> = Z + Z/2 at p=2
    assert group_invariants([[2, 2]], 2, 2) == (1, [2])
    # no relations: free
    assert group_invariants([], 3, 2) == (3, [])


@settings(max_examples=40)
@given(matrices(3, 3), st.sampled_from([2, 3]))
def test_subquot_orders_match_group_invariants(rows, p):
    n = len(rows[0])
    gens = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    sq = SubQuot(p, n, gens, rows)
    rank, torsion = group_invariants(rows, n, p)
    assert sq.free_rank() == rank
    assert sorted(sq.torsion()) == sorted(torsion)


def test_frac_mod_reduces_rationals():
    assert frac_mod(Fraction(7, 3), 4) == (7 * pow(3, -1, 4)) % 4
    assert frac_mod(Fraction(8, 1), 4) == 0
