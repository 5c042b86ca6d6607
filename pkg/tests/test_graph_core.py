import pytest
from hypothesis import given, strategies as st

from bananagon.divisors import gonality_oracle
from bananagon.graph_core import (
    BananaPath,
    BananaTree,
    GraphFormatError,
    MonocultureSpec,
    canonical_path,
    delete_edge,
    format_tree,
    genus,
    lcm_bound,
    make_monoculture,
    make_path,
    make_star,
    monoculture,
    parse_graph,
    read_graph,
    ripen,
    split_heavy,
    split_heavy_offsets,
    star_to_tree,
    tree_as_path,
    tree_as_star,
)

paths = st.lists(st.integers(1, 9), max_size=8).map(lambda A: BananaPath(tuple(A)))


def test_make_path():
    P = make_path((5, 4, 2, 3, 3, 2))
    assert P.n_vertices == 7
    assert len(P.to_tree().bunches) == 6
    assert make_path(()).n_vertices == 1
    P = make_path((3, 2, 3))
    assert P.n_vertices == 4 and genus(P) == 5


def test_make_path_rejects_nonpositive():
    with pytest.raises(ValueError):
        make_path((2, 0, 3))


def test_tree_validation():
    with pytest.raises(ValueError, match="cycle"):
        BananaTree(4, ((0, 1, 2), (1, 2, 2), (2, 0, 1)))
    with pytest.raises(ValueError):
        BananaTree(3, ((0, 1, 2),))
    with pytest.raises(ValueError):
        BananaTree(2, ((0, 1, 0),))
    with pytest.raises(ValueError):
        BananaTree(2, ((0, 2, 1),))


def test_monoculture():
    assert make_monoculture(MonocultureSpec((5, 3), 6)).A == (5, 3, 5, 3, 5, 3)
    assert monoculture((7,), 0).A == ()
    M = monoculture((6, 7), 7057)
    assert len(M.A) == 7057 and M.A[:4] == (6, 7, 6, 7) and M.A[-1] == 6
    with pytest.raises(ValueError):
        MonocultureSpec((), 3)


def test_star():
    S = make_star([(4, 1), (3, 3), (2, 3), (1, 2)])
    assert S.n_vertices == 10
    T = star_to_tree(S)
    assert sorted(T.multiplicities) == [1, 1, 2, 2, 2, 3, 3, 3, 4]
    assert all(u == 0 for u, _, _ in T.bunches)
    T2 = make_star([(2, 1)]).to_tree()
    assert T2.n_vertices == 2 and T2.bunches == ((0, 1, 2),)
    with pytest.raises(ValueError):
        make_star([(2, 1), (3, 1)])
    with pytest.raises(ValueError):
        make_star([(2, 1), (2, 2)])


def test_star_of_two_leaves_is_a_path():
    S = make_star([(3, 2)])
    assert tree_as_path(S.to_tree()) == make_path((3, 3))
    assert tree_as_star(S.to_tree()) == S


def test_genus(mixed_tree_path):
    assert genus(read_graph(str(mixed_tree_path))) == 14
    for a in range(1, 8):
        assert genus(make_path((a,))) == a - 1
    assert genus(BananaTree(4, ((0, 1, 1), (0, 2, 1), (0, 3, 1)))) == 0


def test_ripen():
    assert ripen(make_path((3, 1, 2))) == make_path((3, 2))
    assert gonality_oracle(make_path((3, 1, 2))).gonality == gonality_oracle(make_path((3, 2))).gonality
    simple = BananaTree(4, ((0, 1, 1), (1, 2, 1), (1, 3, 1)))
    assert ripen(simple).n_vertices == 1
    ripe = BananaTree(3, ((0, 1, 2), (0, 2, 3)))
    assert ripen(ripe) == ripe


def test_ripen_tree_relabels():
    T = BananaTree(5, ((0, 1, 1), (1, 2, 3), (1, 3, 1), (3, 4, 2)))
    R = ripen(T)
    assert R.n_vertices == 3
    assert sorted(R.multiplicities) == [2, 3]
    assert gonality_oracle(R).gonality == gonality_oracle(T).gonality


def test_delete_edge():
    assert delete_edge(make_path((3, 3, 3)), 1) == make_path((3, 2, 3))
    M = delete_edge(monoculture((6, 7), 7057), 3528)
    assert M.A[3528] == 5 and M.A[3527] == 7 and M.A[3529] == 7
    with pytest.raises(ValueError):
        delete_edge(make_path((3, 1, 3)), 1)
    T = BananaTree(3, ((0, 1, 2), (0, 2, 1)))
    assert delete_edge(T, 0).bunches[0] == (0, 1, 1)
    with pytest.raises(ValueError):
        delete_edge(T, 1)


def test_split_heavy():
    assert split_heavy(make_path((2, 100, 2))) == [make_path((2,)), make_path((2,))]
    assert split_heavy(make_path((3, 2, 3))) == [make_path((3, 2, 3))]
    assert split_heavy(make_path((9, 2))) == [make_path(()), make_path((2,))]
    assert gonality_oracle(make_path((2, 100, 2))).gonality == 4


def test_split_heavy_is_a_fixpoint():
    # (2, 3, 9, 2): 9 > 5 cuts, then (2, 3) has 3 <= 3 and stays whole.
    assert split_heavy(make_path((2, 3, 9, 2))) == [make_path((2, 3)), make_path((2,))]
    # (4, 2, 7): cut 7, then (4, 2) has 4 > 3, cut again.
    assert split_heavy(make_path((4, 2, 7))) == [make_path(()), make_path((2,)), make_path(())]


@given(paths)
def test_split_heavy_properties(P):
    parts = split_heavy_offsets(P)
    assert sum(piece.n_vertices for _, piece in parts) <= P.n_vertices
    covered = []
    for off, piece in parts:
        assert all(a <= piece.n_vertices for a in piece.A)
        assert P.A[off:off + len(piece.A)] == piece.A
        covered += range(off, off + piece.n_vertices)
    assert covered == list(range(P.n_vertices))


@given(paths)
def test_split_order_does_not_matter(P):
    def rightmost_first(A):
        m = len(A) + 1
        heavy = [j for j, a in enumerate(A) if a > m]
        if not heavy:
            return [A]
        j = heavy[-1]
        return rightmost_first(A[:j]) + rightmost_first(A[j + 1:])

    assert sorted(p.A for p in split_heavy(P)) == sorted(rightmost_first(P.A))


def test_lcm_bound(mixed_tree_path):
    assert lcm_bound(read_graph(str(mixed_tree_path))) == 12
    assert lcm_bound(make_path(())) == 1
    assert lcm_bound(monoculture((6, 7), 2)) == 42


def test_canonical_path():
    assert canonical_path(make_path((3, 2))).A == (2, 3)
    assert canonical_path(make_path((2, 3, 2))).A == (2, 3, 2)
    assert canonical_path(make_path((5, 4, 2, 3, 3, 2))).A == (2, 3, 3, 2, 4, 5)


@given(paths)
def test_invariant_properties(P):
    assert genus(P) >= 0
    if any(a >= 2 for a in P.A):
        assert genus(ripen(P)) == genus(P)
    c = canonical_path(P)
    assert canonical_path(c) == c
    assert canonical_path(P.reversed()) == c
    assert lcm_bound(P) >= max(P.A, default=1)


def test_text_formats(tmp_path):
    assert parse_graph("path:3,2,3") == make_path((3, 2, 3))
    assert parse_graph("path:") == make_path(())
    assert parse_graph("star:4^1,3^3,2^3,1^2") == make_star([(4, 1), (3, 3), (2, 3), (1, 2)])
    T = BananaTree(4, ((0, 1, 2), (1, 2, 3), (1, 3, 4)))
    f = tmp_path / "t.bt1"
    f.write_text(format_tree(T))
    assert read_graph(str(f)) == T
    assert parse_graph(format_tree(make_path((2, 5)))) == make_path((2, 5)).to_tree()
    for bad in ["path:a", "bt1 3\n0 1 2\n", "bt2 2\n0 1 1", "star:3^x", "nonsense"]:
        with pytest.raises(GraphFormatError):
            parse_graph(bad)
    with pytest.raises(GraphFormatError):
        read_graph(str(tmp_path / "missing.bt1"))
