"""Tangles in a box and the satellite construction built on them.

An :class:`AnnularPattern` is an oriented tangle drawn in a rectangle whose
strands end on the west and east sides.  Position ``k`` on either side sits
at height ``k``, i.e. ``k`` steps to the left of an eastward walker.  Gluing
east position ``k`` back to west position ``k`` closes the tangle up inside
a solid torus, which is how satellites, connected sums and braid closures
are all produced here.

Edge labels inside a pattern are arbitrary hashables; :func:`satellite`
relabels everything canonically through
:func:`linkforge.diagram.build_diagram`.
"""
import itertools

from .diagram import Diagram, DiagramError, build_diagram

# corners of a crossing box, counterclockwise
SW, SE, NE, NW = range(4)


class AnnularPattern:
    """Oriented tangle on ``strand_count`` boundary positions.

    Built either from Morse moves (:meth:`sigma`, :meth:`cup`, :meth:`cap`)
    or by cutting a diagram open (:func:`cut_diagram`).  ``strand_orientations[k]``
    is +1 when the strand at position ``k`` runs west to east.
    """

    def __init__(self, orientations):
        self.strand_orientations = tuple(orientations)
        if not self.strand_orientations or any(o not in (1, -1) for o in orientations):
            raise DiagramError("pattern orientations must be a nonempty list of +1/-1")
        n = len(self.strand_orientations)
        self.crossings = []
        self.over_in = []
        self.seeds = []
        self._parent = {}
        self._fresh = itertools.count()
        self.west = [("w", k) for k in range(n)]
        self.east = None
        self._current = list(self.west)
        self._flows = list(self.strand_orientations)

    @property
    def strand_count(self):
        return len(self.strand_orientations)

    def _new(self):
        return ("e", next(self._fresh))

    def find(self, e):
        p = self._parent
        while p.get(e, e) != e:
            p[e] = p.get(p[e], p[e])
            e = p[e]
        return e

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[rb] = ra

    # -- Morse moves -------------------------------------------------------------
    def sigma(self, i, eps=1):
        """Cross positions ``i`` and ``i+1``.

        For ``eps=+1`` the strand falling from ``i+1`` to ``i`` passes over;
        the crossing is positive when both strands run east.
        """
        self._check_open()
        if not 0 <= i < len(self._current) - 1:
            raise DiagramError(f"sigma index {i} out of range")
        cur, fl = self._current, self._flows
        corner = {SW: cur[i], NW: cur[i + 1]}
        corner[SE], corner[NE] = self._new(), self._new()
        rising_in = SW if fl[i] > 0 else NE
        falling_in = NW if fl[i + 1] > 0 else SE
        under_in, over_in = (rising_in, falling_in) if eps > 0 else (falling_in, rising_in)
        self.crossings.append(tuple(corner[(under_in + s) % 4] for s in range(4)))
        self.over_in.append((over_in - under_in) % 4)
        cur[i], cur[i + 1] = corner[SE], corner[NE]
        fl[i], fl[i + 1] = fl[i + 1], fl[i]
        return self

    def cup(self, i, direction=1):
        """Insert a new arc occupying positions ``i`` and ``i+1``.

        With ``direction=+1`` the arc leaves eastward at ``i`` and returns at ``i+1``.
        """
        self._check_open()
        if not 0 <= i <= len(self._current):
            raise DiagramError(f"cup index {i} out of range")
        e = self._new()
        self._current[i:i] = [e, e]
        self._flows[i:i] = [direction, -direction]
        return e

    def cap(self, i):
        """Join the strands at positions ``i`` and ``i+1``."""
        self._check_open()
        if not 0 <= i < len(self._current) - 1:
            raise DiagramError(f"cap index {i} out of range")
        if self._flows[i] != -self._flows[i + 1]:
            raise DiagramError(f"cap at {i} joins two strands with the same direction")
        self.union(self._current[i], self._current[i + 1])
        del self._current[i:i + 2]
        del self._flows[i:i + 2]
        return self

    def add_seed(self, label):
        self.seeds.append(label)
        return self

    def close(self):
        """Fix the east boundary; flows there must match the west side."""
        self._check_open()
        if tuple(self._flows) != self.strand_orientations:
            raise DiagramError("pattern endpoint mismatch: east flows "
                               f"{self._flows} differ from {list(self.strand_orientations)}")
        self.east = list(self._current)
        return self

    def _check_open(self):
        if self.east is not None:
            raise DiagramError("pattern already closed")

    @property
    def output_component_of_strand(self):
        """Strand position -> output component index (0-based) once closed up."""
        return _trace_positions(self)


def _trace_positions(P):
    """Seed index of the component through each boundary position."""
    closed = satellite(Diagram([], [], [()]), 1, P, _keep_labels=True)
    D, name = closed
    out = {}
    for k in range(P.strand_count):
        lab = name.get(("P", P.find(P.west[k])))
        out[k] = None if lab is None else D.component_of_edge(lab)
    return out


# --- building blocks -------------------------------------------------------------

def identity_pattern(n=1, orientations=None):
    P = AnnularPattern(orientations or [1] * n)
    seen = set()
    for k in range(n):
        if k not in seen:
            seen.add(k)
            P.add_seed(P.west[k])
    return P.close()


def braid_pattern(n, word):
    """Closed-braid pattern; ``word`` lists signed generators (1-based, sigma_i = i)."""
    P = AnnularPattern([1] * n)
    perm = list(range(n))
    for g in word:
        i = abs(g) - 1
        P.sigma(i, 1 if g > 0 else -1)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    P.close()
    # strand starting at west k ends at east position where perm shows k
    end_of = {perm[j]: j for j in range(n)}
    seen = set()
    for k in range(n):
        if k in seen:
            continue
        P.add_seed(P.west[k])
        j = k
        while j not in seen:
            seen.add(j)
            j = end_of[j]
    return P


def bing_pattern(eps=1):
    """Clasp pattern on two antiparallel strands.

    The two strands are capped off on both sides of the box; a small loop
    clasps the resulting band once near each end, so each output
    component has winding number zero around the companion.
    """
    P = AnnularPattern([1, -1])
    loop = P.cup(2, 1)
    P.sigma(1, eps).sigma(1, eps).cap(0)
    P.cup(0, 1)
    P.sigma(1, -eps).sigma(1, -eps).cap(2)
    P.close()
    P.add_seed(P.west[0]).add_seed(loop)
    return P


def full_twists(n, t):
    """``t`` full twists on ``n`` parallel positions, as a list of signed generators."""
    one = list(range(1, n)) * n
    return (one if t >= 0 else [-g for g in reversed(one)]) * abs(t)


# --- satellite ------------------------------------------------------------------

def satellite(D, c, P, _keep_labels=False):
    """Replace component ``c`` (1-based) of ``D`` by the pattern ``P``.

    The companion is cabled by ``P.strand_count`` blackboard-parallel
    copies, corrected by ``-writhe(c)`` full twists to the zero framing,
    and ``P`` is spliced into the basepoint edge.  The new components take
    the place of ``c`` in the component order, in the order of ``P.seeds``.
    """
    if not isinstance(P, AnnularPattern) or P.east is None:
        raise DiagramError("satellite needs a closed AnnularPattern")
    ci = D._check_component(c)
    n = P.strand_count
    orient = P.strand_orientations
    comp = D.components[ci]
    parent = {}

    def find(e):
        while parent.get(e, e) != e:
            parent[e] = parent.get(parent[e], parent[e])
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    crossings, over_in = [], []
    base = comp[0] if comp else None

    def copy(e, k, outgoing):
        if D.component_of_edge(e) != ci:
            return ("D", e)
        if e == base:
            return ("T", k) if outgoing else ("H", k)
        return ("C", e, k)

    for x, (a, b, cc, d) in enumerate(D.crossings):
        sign = D.signs[x]
        u_comp, o_comp = D.strand_components(x)
        nu = n if u_comp == ci else 1
        no = n if o_comp == ci else 1
        ou = orient if u_comp == ci else (1,)
        oo = orient if o_comp == ci else (1,)
        # rotate so the under strand runs north; the over strand runs east iff sign > 0
        vk = [nu - 1 - i for i in range(nu)]
        hk = list(range(no)) if sign > 0 else [no - 1 - j for j in range(no)]
        west_e, east_e = d, b
        west_out = sign < 0
        v = [[None] * (no + 1) for _ in range(nu)]
        h = [[None] * (nu + 1) for _ in range(no)]
        for i, k in enumerate(vk):
            v[i][0] = copy(a, k, False)
            v[i][no] = copy(cc, k, True)
            for j in range(1, no):
                v[i][j] = ("I", x, "v", i, j)
        for j, k in enumerate(hk):
            h[j][0] = copy(west_e, k, west_out)
            h[j][nu] = copy(east_e, k, not west_out)
            for i in range(1, nu):
                h[j][i] = ("I", x, "h", j, i)
        for i in range(nu):
            north = ou[vk[i]] > 0
            for j in range(no):
                east = (sign > 0) == (oo[hk[j]] > 0)
                S, N, W, E = v[i][j], v[i][j + 1], h[j][i], h[j][i + 1]
                if north:
                    crossings.append((S, E, N, W))
                    over_in.append(3 if east else 1)
                else:
                    crossings.append((N, W, S, E))
                    over_in.append(1 if east else 3)

    # twist box then pattern, spliced between the T and H pieces of the basepoint edge
    twist = braid_pattern_oriented(orient, full_twists(n, -D.writhe(c)) if comp else [])
    for k, (lab, o) in enumerate(zip(twist.crossings, twist.over_in)):
        crossings.append(tuple(("W", twist.find(e)) for e in lab))
        over_in.append(o)
    for lab, o in zip(P.crossings, P.over_in):
        crossings.append(tuple(("P", P.find(e)) for e in lab))
        over_in.append(o)
    for k in range(n):
        union(("W", twist.find(twist.east[k])), ("P", P.find(P.west[k])))
        if comp:
            union(("T", k), ("W", twist.find(twist.west[k])))
            union(("H", k), ("P", P.find(P.east[k])))
        else:
            union(("P", P.find(P.east[k])), ("W", twist.find(twist.west[k])))

    crossings = [tuple(find(e) for e in q) for q in crossings]
    present = {e for q in crossings for e in q}
    seeds = []
    for j, other in enumerate(D.components):
        if j == ci:
            for s in P.seeds:
                r = find(("P", P.find(s)))
                seeds.append(r if r in present else None)
        elif other:
            seeds.append(find(("D", other[0])))
        else:
            seeds.append(None)
    if not _keep_labels:
        return build_diagram(crossings, over_in, seeds)
    return _build_with_names(crossings, over_in, seeds, find)


def _build_with_names(crossings, over_in, seeds, find):
    D = build_diagram(crossings, over_in, seeds)
    # build_diagram numbers edges in traversal order; redo the traversal to name them
    names = {}
    head = {}
    for i, q in enumerate(crossings):
        for s in (0, over_in[i]):
            head[q[s]] = (i, s)
    count = 0
    for s in seeds:
        if s is None:
            continue
        e = s
        while True:
            count += 1
            names[e] = count
            i, sl = head[e]
            e = crossings[i][(sl + 2) % 4]
            if e == s:
                break

    class _Names(dict):
        def get(self, key, default=None):
            return dict.get(self, find(key), default)

    return D, _Names(names)


def braid_pattern_oriented(orientations, word):
    """Braid box on strands with the given orientations (no seeds)."""
    P = AnnularPattern(orientations)
    for g in word:
        P.sigma(abs(g) - 1, 1 if g > 0 else -1)
    return P.close()


# --- cutting a diagram open ------------------------------------------------------

def edge_faces(D, e):
    """(left face, right face) of edge ``e`` with respect to its orientation."""
    faces = D.dart_faces()
    return _edge_faces(D, faces, e)


def _tail_head(D, e):
    occ = D.occurrences(e)
    head = None
    for x, s in occ:
        if s == 0 or s == D.over_in_slot(x):
            head = (x, s)
    tail = occ[0] if occ[1] == head else occ[1]
    return tail, head


def _edge_faces(D, faces, e):
    tail, head = _tail_head(D, e)
    return faces[(e, tail)], faces[(e, head)]


def cut_diagram(D, edges):
    """Open ``D`` along a planar arc crossing ``edges`` in order.

    The arc starts in a face next to the first edge and each pair of
    consecutive edges must share a face, which is the face the arc passes
    through between them.  The result is a pattern whose strand ``k`` is the
    ``k``-th cut edge; closing it up in an unknot gives back ``D``.
    """
    edges = list(edges)
    if not edges:
        raise DiagramError("cut needs at least one edge")
    if len(set(edges)) != len(edges):
        raise DiagramError("cut edges must be distinct")
    for e in edges:
        if e not in D._edge_comp or not D.occurrences(e):
            raise DiagramError(f"cannot cut along edge {e!r}")
    faces = D.dart_faces()
    lr = [_edge_faces(D, faces, e) for e in edges]
    # frame[i] = +1 when the arc sees edge i running left to right with the
    # orientation of D (the face after edge i is on its left)
    frame = []
    for i, (lf, rf) in enumerate(lr):
        if i + 1 < len(edges):
            nxt = set(lr[i + 1])
            if i > 0:
                prev = frame_face
                if rf == prev and lf in nxt:
                    frame.append(1)
                elif lf == prev and rf in nxt:
                    frame.append(-1)
                else:
                    raise DiagramError(f"edges {edges[i - 1]!r}, {edges[i]!r}, "
                                       f"{edges[i + 1]!r} are not on a planar arc")
            elif lf in nxt:
                frame.append(1)
            elif rf in nxt:
                frame.append(-1)
            else:
                raise DiagramError(f"edges {edges[i]!r} and {edges[i + 1]!r} share no face")
        elif i > 0:
            if rf == frame_face:
                frame.append(1)
            elif lf == frame_face:
                frame.append(-1)
            else:
                raise DiagramError(f"edge {edges[i]!r} does not border the arc's face")
        else:
            frame.append(1)
        frame_face = lf if frame[-1] > 0 else rf

    P = AnnularPattern(frame)
    cut = {e: i for i, e in enumerate(edges)}
    tail_piece = {}

    def lab(e, x, s):
        if e not in cut:
            return ("L", e)
        i = cut[e]
        tail, head = _tail_head(D, e)
        at_tail = (x, s) == tail
        # the A piece sits at the arc's left end of the edge, B at the right
        at_a = at_tail if frame[i] > 0 else not at_tail
        return ("A", i) if at_a else ("B", i)

    for x, q in enumerate(D.crossings):
        P.crossings.append(tuple(lab(e, x, s) for s, e in enumerate(q)))
        P.over_in.append(D.over_in_slot(x))
    P.west = [("B", i) for i in range(len(edges))]
    P._current = [("A", i) for i in range(len(edges))]
    P.close()
    for i, e in enumerate(edges):
        tail_piece[e] = ("A", i) if frame[i] > 0 else ("B", i)
    for comp in D.components:
        if not comp:
            P.add_seed(None)
        else:
            P.add_seed(tail_piece.get(comp[0], ("L", comp[0])))
    return P


def axis_word(D, edges, generator_of_edge):
    """Wirtinger word of the loop encircling the arc that crosses ``edges``.

    The loop runs along the arc over the cut edges and back underneath;
    ``generator_of_edge`` maps an edge to its (1-based) generator.
    """
    P = cut_diagram(D, edges)
    return tuple(generator_of_edge[e] * o for e, o in zip(edges, P.strand_orientations))


def connected_sum(D1, c1, D2, c2):
    """Connected sum of component ``c1`` of ``D1`` with component ``c2`` of ``D2``.

    The joined component keeps position ``c1``; the other components of
    ``D2`` follow it.
    """
    k2 = D2._check_component(c2)
    D1._check_component(c1)
    order = [k2 + 1] + [j + 1 for j in range(D2.component_count) if j != k2]
    from .diagram import sublink, split_union
    D2 = sublink(D2, order)
    if not D2.components[0]:
        # summing with a crossingless unknot changes nothing
        rest = sublink(D2, list(range(2, D2.component_count + 1))) if D2.component_count > 1 else None
        if rest is None:
            return D1
        joined = split_union(D1, rest)
        m1 = D1.component_count
        order = list(range(1, c1 + 1)) + list(range(m1 + 1, joined.component_count + 1)) \
            + list(range(c1 + 1, m1 + 1))
        return sublink(joined, order)
    return satellite(D1, c1, cut_diagram(D2, [D2.components[0][0]]))


def bing_double(D, c, eps=1):
    """Bing double of component ``c``; the two new components replace it."""
    return satellite(D, c, bing_pattern(eps))


def infect(L, edges, K):
    """The satellite L(eta, K) for the axis eta encircling the arc through ``edges``."""
    if K.component_count != 1:
        raise DiagramError("companion must be a knot")
    return satellite(K, 1, cut_diagram(L, edges))


def braid_closure(n, word):
    return satellite(Diagram([], [], [()]), 1, braid_pattern(n, word))
