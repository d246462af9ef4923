"""Planar binary trees T(m) and the iterated Bing doubles they encode.

A tree of height one is the Hopf link; replacing a leaf by a caret Bing
doubles the corresponding component.  ``T(m)`` has ``m`` leaves: its root
has a single leaf on the right and the minimal-height tree T-dagger(m) with
``m - 1`` leaves on the left.
"""
from collections import deque

from .diagram import DiagramError, parse_pd, sublink
from .tangle import bing_double

HOPF_PD = "X(4,1,3,2)\nX(2,3,1,4)\ncomponent 1 basepoint 1\ncomponent 2 basepoint 3\n"


class TreeError(ValueError):
    pass


class Node:
    __slots__ = ("left", "right", "label")

    def __init__(self, left=None, right=None, label=None):
        if (left is None) != (right is None):
            raise TreeError("an internal node needs two children")
        self.left = left
        self.right = right
        self.label = label

    @property
    def is_leaf(self):
        return self.left is None

    def leaves(self):
        if self.is_leaf:
            return [self]
        return self.left.leaves() + self.right.leaves()

    def leaf_depths(self, depth=0):
        if self.is_leaf:
            return [depth]
        return self.left.leaf_depths(depth + 1) + self.right.leaf_depths(depth + 1)

    def height(self):
        return max(self.leaf_depths())

    def leaf_count(self):
        return len(self.leaves())

    def copy(self):
        if self.is_leaf:
            return Node(label=self.label)
        return Node(self.left.copy(), self.right.copy(), self.label)

    def to_nested(self):
        if self.is_leaf:
            return self.label
        return [self.left.to_nested(), self.right.to_nested()]

    def __repr__(self):
        return f"Node({self.to_nested()!r})"


def _check_m(m):
    if not isinstance(m, int) or m < 2:
        raise TreeError("m must be an integer >= 2")


def height_h(m):
    """ceil(log2(m - 1))."""
    _check_m(m)
    return (m - 2).bit_length()


def height_k(m):
    """floor(log2(m - 1))."""
    _check_m(m)
    return (m - 1).bit_length() - 1


def complete_tree(h):
    if h == 0:
        return Node()
    return Node(complete_tree(h - 1), complete_tree(h - 1))


def dagger_tree(m):
    """Minimal-height tree with m - 1 leaves.

    Start from the complete tree of height h(m) and collapse the rightmost
    2^h - (m - 1) sibling pairs of bottom leaves into their parents.
    """
    h = height_h(m)
    t = complete_tree(h)
    remove = 2 ** h - (m - 1)
    # parents of bottom leaf pairs, left to right
    parents = []

    def collect(node, depth):
        if node.is_leaf:
            return
        if depth == h - 1:
            parents.append(node)
            return
        collect(node.left, depth + 1)
        collect(node.right, depth + 1)

    collect(t, 0)
    for node in parents[len(parents) - remove:] if remove else []:
        node.left = node.right = None
    return t


def build_tree(m):
    return Node(dagger_tree(m), Node())


def label_leaves(tree, index):
    if isinstance(index, str):
        index = [int(ch) for ch in index]
    index = list(index)
    leaves = tree.leaves()
    if len(index) != len(leaves):
        raise TreeError(f"multi-index has {len(index)} entries, tree has {len(leaves)} leaves")
    if len(set(index)) != len(index):
        raise TreeError("multi-index has a repeated entry")
    t = tree.copy()
    for leaf, i in zip(t.leaves(), index):
        leaf.label = i
    return t


def tree_to_link(tree):
    """Iterated Bing double encoded by a labelled tree.

    Components are returned in increasing order of leaf label.
    """
    if tree.is_leaf:
        raise TreeError("tree must have at least two leaves")
    if any(leaf.label is None for leaf in tree.leaves()):
        raise TreeError("tree leaves must be labelled")
    D = parse_pd(HOPF_PD)
    # slots[k] is the tree node carried by component k + 1
    slots = [tree.left, tree.right]
    queue = deque([tree.left, tree.right])
    while queue:
        node = queue.popleft()
        if node.is_leaf:
            continue
        c = slots.index(node) + 1
        try:
            D = bing_double(D, c)
        except DiagramError as exc:
            raise TreeError(str(exc)) from None
        slots[c - 1:c] = [node.left, node.right]
        queue.extend([node.left, node.right])
    order = sorted(range(len(slots)), key=lambda k: slots[k].label)
    return sublink(D, [k + 1 for k in order])


def link_for_index(index):
    """tree_to_link of T(m) labelled by ``index`` (m = its length)."""
    if isinstance(index, str):
        index = [int(ch) for ch in index]
    return tree_to_link(label_leaves(build_tree(len(index)), index))
