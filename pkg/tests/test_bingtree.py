import pytest

from linkforge import bingtree, milnor
from linkforge.bingtree import TreeError
from linkforge.diagram import linking_matrix


def test_heights_for_seven():
    assert bingtree.height_h(7) == 3
    assert bingtree.height_k(7) == 2
    assert bingtree.build_tree(7).leaf_depths() == [4, 4, 4, 4, 3, 3, 1]


@pytest.mark.parametrize("m", range(2, 21))
def test_dagger_tree_properties(m):
    h = bingtree.height_h(m)
    k = bingtree.height_k(m)
    assert 2 ** k <= m - 1 <= 2 ** h
    t = bingtree.dagger_tree(m)
    assert t.leaf_count() == m - 1
    assert t.height() == h
    assert min(t.leaf_depths()) >= k
    T = bingtree.build_tree(m)
    assert T.leaf_count() == m and T.height() == h + 1
    assert T.leaf_depths()[-1] == 1


def test_bad_inputs():
    with pytest.raises(TreeError):
        bingtree.build_tree(1)
    with pytest.raises(TreeError):
        bingtree.label_leaves(bingtree.build_tree(3), "12")
    with pytest.raises(TreeError):
        bingtree.label_leaves(bingtree.build_tree(3), "112")
    with pytest.raises(bingtree.TreeError):
        bingtree.tree_to_link(bingtree.Node())


def test_links_for_small_indices():
    H = bingtree.link_for_index("12")
    assert abs(linking_matrix(H)[0][1]) == 1
    B = bingtree.link_for_index("123")
    assert linking_matrix(B) == [[0] * 3 for _ in range(3)]
    assert milnor.milnor_mu(B, "123") == (1, 0)


def test_four_component_link():
    L = bingtree.link_for_index("1234")
    table = milnor.mu_all_upto(L, 4)
    assert abs(table["1234"][0]) == 1 and table["1234"][1] == 0
    assert all(v[0] == 0 for key, v in table.items() if len(key) < 4)


def test_labels_permute_components():
    L = bingtree.link_for_index("213")
    assert abs(milnor.milnor_mu(L, "213")[0]) == 1
