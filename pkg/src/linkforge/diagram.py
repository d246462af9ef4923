"""Oriented link diagrams encoded as PD codes.

Conventions
-----------
A crossing ``X(a, b, c, d)`` lists its four edge labels counterclockwise,
starting with the incoming under-edge ``a``; the under-strand runs a -> c.
The crossing is positive exactly when the over-strand runs d -> b.

Edges are the segments of the diagram between consecutive crossing points
(so the standard trefoil has six of them).  Components are numbered from 1
in the public API; each has a basepoint edge (the "arc with a dot") from
which its edges are listed in orientation order.  A component without any
crossings cannot be written as a PD code and is recorded as an
``unknot-component`` line instead.
"""
import re
import warnings
from fractions import Fraction


class DiagramError(ValueError):
    pass


class Diagram:
    """Immutable oriented link diagram.

    ``crossings`` is a tuple of PD quadruples, ``signs`` the matching tuple
    of crossing signs and ``components`` a tuple of edge-label tuples in
    traversal order, basepoint edge first (empty for a crossingless unknot).
    """

    __slots__ = ("crossings", "signs", "components", "_edge_comp", "_occ")

    def __init__(self, crossings, signs, components):
        self.crossings = tuple(tuple(x) for x in crossings)
        self.signs = tuple(signs)
        self.components = tuple(tuple(c) for c in components)
        self._edge_comp = {}
        for i, comp in enumerate(self.components):
            for e in comp:
                self._edge_comp[e] = i
        self._occ = {}
        for ci, x in enumerate(self.crossings):
            for s, e in enumerate(x):
                self._occ.setdefault(e, []).append((ci, s))

    # -- basic queries --------------------------------------------------------
    @property
    def component_count(self):
        return len(self.components)

    @property
    def arc_component(self):
        """Edge label -> component number (1-based)."""
        return {e: i + 1 for e, i in self._edge_comp.items()}

    @property
    def first_arc(self):
        """Component number -> basepoint edge (None for a crossingless unknot)."""
        return {i + 1: (c[0] if c else None) for i, c in enumerate(self.components)}

    def edges(self):
        return [e for comp in self.components for e in comp]

    def component_of_edge(self, e):
        """0-based component index of an edge."""
        return self._edge_comp[e]

    def occurrences(self, e):
        return self._occ.get(e, [])

    def over_in_slot(self, i):
        return 3 if self.signs[i] > 0 else 1

    def strand_components(self, i):
        """(under component, over component), 0-based."""
        x = self.crossings[i]
        return self._edge_comp[x[0]], self._edge_comp[x[1]]

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.crossings, self.signs, self.components) == (
            other.crossings, other.signs, other.components)

    def __hash__(self):
        return hash((self.crossings, self.signs, self.components))

    def __repr__(self):
        return (f"<Diagram: {len(self.crossings)} crossings, "
                f"{self.component_count} components>")

    def _check_component(self, c):
        if not isinstance(c, int) or not 1 <= c <= self.component_count:
            raise DiagramError(f"invalid component {c!r}; diagram has "
                               f"{self.component_count} components")
        return c - 1

    def writhe(self, c=None):
        """Sum of crossing signs, over all crossings or the self-crossings of ``c``."""
        if c is None:
            return sum(self.signs)
        k = self._check_component(c)
        return sum(s for i, s in enumerate(self.signs)
                   if self.strand_components(i) == (k, k))

    def render(self):
        return render_pd(self)

    # -- faces ----------------------------------------------------------------
    def dart_faces(self):
        """Map each dart ``(edge, (crossing, slot))`` to the id of the face on its left.

        A dart leaves the given crossing slot along ``edge``.
        """
        faces = {}
        fid = 0
        for e, occ in self._occ.items():
            for start in occ:
                if (e, start) in faces:
                    continue
                d = (e, start)
                while d not in faces:
                    faces[d] = fid
                    edge, (x, s) = d
                    o1, o2 = self._occ[edge]
                    if o1 == (x, s) and o2 != (x, s):
                        x2, s2 = o2
                    elif o2 == (x, s):
                        x2, s2 = o1
                    else:
                        x2, s2 = o2
                    ns = (s2 + 3) % 4
                    d = (self.crossings[x2][ns], (x2, ns))
                fid += 1
        return faces


# --- construction from oriented crossing data ------------------------------------

def build_diagram(crossings, over_in, seeds):
    """Assemble a Diagram from oriented crossings with arbitrary hashable labels.

    ``crossings[i]`` is a counterclockwise quadruple starting at the
    incoming under-edge and ``over_in[i]`` (1 or 3) the slot where the
    over-strand enters.  ``seeds`` lists one basepoint label per component
    in output order, or ``None`` for a crossingless unknot component.
    Edges are renumbered 1, 2, ... along the components in order.
    """
    occ = {}
    for i, x in enumerate(crossings):
        for s, e in enumerate(x):
            occ.setdefault(e, []).append((i, s))
    for e, o in occ.items():
        if len(o) != 2:
            raise DiagramError(f"arc multiplicity: edge {e!r} appears {len(o)} times")
    head = {}
    for i, x in enumerate(crossings):
        for s in (0, over_in[i]):
            e = x[s]
            if e in head:
                raise DiagramError(f"orientation conflict at edge {e!r}")
            head[e] = (i, s)
    if len(head) != len(occ):
        missing = next(e for e in occ if e not in head)
        raise DiagramError(f"orientation conflict at edge {missing!r}")

    comps = []
    seen = set()
    for seed in seeds:
        if seed is None:
            comps.append(())
            continue
        if seed not in occ:
            raise DiagramError(f"seed edge {seed!r} is not in the diagram")
        if seed in seen:
            raise DiagramError(f"two seeds on one component ({seed!r})")
        cyc = []
        e = seed
        while True:
            cyc.append(e)
            seen.add(e)
            i, s = head[e]
            e = crossings[i][(s + 2) % 4]
            if e == seed:
                break
            if e in seen or len(cyc) > len(occ):
                raise DiagramError(f"broken component cycle at edge {e!r}")
        comps.append(cyc)
    if len(seen) != len(occ):
        left = sorted(map(repr, set(occ) - seen))[:3]
        raise DiagramError(f"edges not reached from any basepoint: {', '.join(left)}")

    relabel = {}
    for cyc in comps:
        for e in cyc:
            relabel[e] = len(relabel) + 1
    pd = [tuple(relabel[e] for e in x) for x in crossings]
    signs = [1 if o == 3 else -1 for o in over_in]
    comps = [tuple(relabel[e] for e in c) for c in comps]
    return Diagram(pd, signs, comps)


# --- PD text format ------------------------------------------------------------

_X_RE = re.compile(r"X[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(text):
    """Parse PD text into a validated :class:`Diagram`.

    Accepted lines: ``X(a,b,c,d)`` entries, ``component k basepoint a``,
    ``unknot-component k`` and ``#`` comments.
    """
    raw = []
    basepoints = {}
    unknots = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "component":
            if len(toks) != 4 or toks[2] != "basepoint":
                raise DiagramError(f"line {lineno}: expected 'component k basepoint a'")
            basepoints[int(toks[1])] = _label(toks[3])
            continue
        if toks[0] == "unknot-component":
            if len(toks) != 2:
                raise DiagramError(f"line {lineno}: expected 'unknot-component k'")
            unknots.add(int(toks[1]))
            continue
        found = _X_RE.findall(line)
        if not found or _X_RE.sub("", line).strip(" ,;"):
            raise DiagramError(f"line {lineno}: cannot parse {line!r}")
        for body in found:
            labels = [_label(t) for t in body.replace(",", " ").split()]
            if len(labels) != 4:
                raise DiagramError(f"line {lineno}: crossing needs 4 labels")
            raw.append(tuple(labels))
    return from_pd(raw, basepoints, unknots)


def _label(tok):
    tok = tok.strip()
    return int(tok) if tok.lstrip("-").isdigit() else tok


def from_pd(crossings, basepoints=None, unknots=()):
    """Build a Diagram from PD quadruples, inferring orientations.

    ``basepoints`` maps component numbers to basepoint edges; ``unknots``
    lists the numbers of crossingless components.
    """
    basepoints = dict(basepoints or {})
    crossings = [tuple(x) for x in crossings]
    occ = {}
    for i, x in enumerate(crossings):
        for s, e in enumerate(x):
            occ.setdefault(e, []).append((i, s))
    for e, o in sorted(occ.items(), key=lambda kv: repr(kv[0])):
        if len(o) != 2:
            raise DiagramError(f"arc multiplicity: edge {e!r} appears {len(o)} times")

    # direction[(i, s)] is True when the strand enters crossing i at slot s
    direction = {}
    for i in range(len(crossings)):
        direction[(i, 0)] = True
        direction[(i, 2)] = False

    def propagate():
        changed = True
        while changed:
            changed = False
            for e, (p, q) in occ.items():
                dp, dq = direction.get(p), direction.get(q)
                if dp is not None and dq is not None:
                    if dp == dq:
                        raise DiagramError(f"orientation conflict at edge {e!r}")
                elif dp is not None:
                    direction[q] = not dp
                    changed = True
                elif dq is not None:
                    direction[p] = not dq
                    changed = True
            for i in range(len(crossings)):
                d1, d3 = direction.get((i, 1)), direction.get((i, 3))
                if d1 is not None and d3 is not None:
                    if d1 == d3:
                        raise DiagramError(
                            f"orientation conflict at edge {crossings[i][1]!r}")
                elif d1 is not None:
                    direction[(i, 3)] = not d1
                    changed = True
                elif d3 is not None:
                    direction[(i, 1)] = not d3
                    changed = True

    propagate()
    # Components that only pass over others: orient so that labels increase.
    while True:
        free = sorted((e for e, (p, q) in occ.items() if p not in direction),
                      key=repr)
        if not free:
            break
        e = free[0]
        p, q = occ[e]
        chosen = None
        for headp in (p, q):
            nxt = crossings[headp[0]][(headp[1] + 2) % 4]
            if isinstance(e, int) and nxt == e + 1:
                chosen = headp
                break
        if chosen is None:
            for headp in (p, q):
                prev = crossings[headp[0]][(headp[1] + 2) % 4]
                tailp = q if headp == p else p
                prv = crossings[tailp[0]][(tailp[1] + 2) % 4]
                if isinstance(e, int) and prv == e - 1:
                    chosen = headp
                    break
        if chosen is None:
            chosen = p
            warnings.warn(f"orientation of the over-only component through edge {e!r} "
                          "chosen arbitrarily")
        direction[chosen] = True
        direction[q if chosen == p else p] = False
        propagate()

    over_in = []
    for i in range(len(crossings)):
        over_in.append(1 if direction[(i, 1)] else 3)

    # traverse cycles to find components
    head = {}
    for i, x in enumerate(crossings):
        for s in range(4):
            if direction[(i, s)]:
                head[x[s]] = (i, s)
    cycles = []
    seen = set()
    for e in sorted(occ, key=_sort_key):
        if e in seen:
            continue
        cyc = []
        f = e
        while f not in seen:
            seen.add(f)
            cyc.append(f)
            i, s = head[f]
            f = crossings[i][(s + 2) % 4]
        if f != e:
            raise DiagramError(f"broken component cycle at edge {f!r}")
        cycles.append(cyc)

    m = len(cycles) + len(unknots)
    bad = [k for k in list(basepoints) + list(unknots) if not 1 <= k <= m]
    if bad:
        raise DiagramError(f"component number {bad[0]} out of range 1..{m}")
    if set(basepoints) & set(unknots):
        raise DiagramError("a component cannot be both knotted and crossingless")
    slots = [None] * m
    for k in unknots:
        slots[k - 1] = ("unknot",)
    cyc_of = {}
    for ci, cyc in enumerate(cycles):
        for e in cyc:
            cyc_of[e] = ci
    used = set()
    for k, bp in sorted(basepoints.items()):
        if bp not in cyc_of:
            raise DiagramError(f"basepoint {bp!r} of component {k} is not an edge")
        ci = cyc_of[bp]
        if ci in used:
            raise DiagramError(f"basepoints of two components lie on one cycle ({bp!r})")
        used.add(ci)
        slots[k - 1] = ("cycle", ci, bp)
    rest = [ci for ci in range(len(cycles)) if ci not in used]
    for k in range(m):
        if slots[k] is None:
            ci = rest.pop(0)
            slots[k] = ("cycle", ci, min(cycles[ci], key=_sort_key))
    comps = []
    for slot in slots:
        if slot[0] == "unknot":
            comps.append(())
        else:
            _, ci, bp = slot
            cyc = cycles[ci]
            j = cyc.index(bp)
            comps.append(tuple(cyc[j:] + cyc[:j]))
    signs = [1 if o == 3 else -1 for o in over_in]
    return Diagram(crossings, signs, comps)


def _sort_key(e):
    return (0, e, "") if isinstance(e, int) else (1, 0, str(e))


def render_pd(D):
    lines = [f"X({','.join(map(str, x))})" for x in D.crossings]
    for k, comp in enumerate(D.components, 1):
        if comp:
            lines.append(f"component {k} basepoint {comp[0]}")
        else:
            lines.append(f"unknot-component {k}")
    return "\n".join(lines) + "\n"


# --- invariants read directly off the diagram ---------------------------------

def linking_matrix(D):
    """Symmetric integer matrix of pairwise linking numbers (zero diagonal)."""
    m = D.component_count
    half = [[0] * m for _ in range(m)]
    for i, s in enumerate(D.signs):
        u, o = D.strand_components(i)
        if u != o:
            half[u][o] += s
            half[o][u] += s
    out = []
    for row in half:
        if any(v % 2 for v in row):
            raise DiagramError("odd crossing count between two components")
        out.append([v // 2 for v in row])
    return out


def linking_number(D, c1, c2):
    return linking_matrix(D)[D._check_component(c1)][D._check_component(c2)]


def sublink(D, keep):
    """Diagram of the sublink formed by the listed components (1-based), in that order."""
    keep_idx = [D._check_component(c) for c in keep]
    keep_set = set(keep_idx)
    parent = {}

    def find(e):
        while parent.get(e, e) != e:
            parent[e] = parent.get(parent[e], parent[e])
            e = parent[e]
        return e

    kept, kept_over = [], []
    for i, x in enumerate(D.crossings):
        u, o = D.strand_components(i)
        if u in keep_set and o in keep_set:
            kept.append(x)
            kept_over.append(D.over_in_slot(i))
            continue
        if u in keep_set:
            parent[find(x[2])] = find(x[0])
        if o in keep_set:
            oi = D.over_in_slot(i)
            parent[find(x[(oi + 2) % 4])] = find(x[oi])
    crossings = [tuple(find(e) for e in x) for x in kept]
    present = {e for x in crossings for e in x}
    seeds = []
    for k in keep_idx:
        comp = D.components[k]
        if not comp:
            seeds.append(None)
            continue
        r = find(comp[0])
        seeds.append(r if r in present else None)
    return build_diagram(crossings, kept_over, seeds)


def mirror(D):
    """Mirror image: every crossing switched."""
    crossings, over_in = [], []
    for i, (a, b, c, d) in enumerate(D.crossings):
        oi = D.over_in_slot(i)
        if oi == 3:
            # over strand d -> b becomes the under strand
            crossings.append((d, a, b, c))
            over_in.append(1)
        else:
            crossings.append((b, c, d, a))
            over_in.append(3)
    seeds = [c[0] if c else None for c in D.components]
    return build_diagram(crossings, over_in, seeds)


def split_union(*diagrams):
    crossings, over_in, seeds = [], [], []
    for k, D in enumerate(diagrams):
        for i, x in enumerate(D.crossings):
            crossings.append(tuple((k, e) for e in x))
            over_in.append(D.over_in_slot(i))
        seeds.extend((k, c[0]) if c else None for c in D.components)
    return build_diagram(crossings, over_in, seeds)


def unknot():
    return Diagram([], [], [()])


def unlink(n):
    return Diagram([], [], [()] * n)


def half_linking_total(D):
    return Fraction(sum(D.signs), 2)


def is_planar(D):
    """Euler-characteristic check: each connected piece with c crossings has c + 2 faces."""
    if not D.crossings:
        return True
    piece = list(range(len(D.crossings)))

    def find(i):
        while piece[i] != i:
            piece[i] = piece[piece[i]]
            i = piece[i]
        return i

    for e in D.edges():
        (x1, _), (x2, _) = D.occurrences(e)
        piece[find(x1)] = find(x2)
    faces = {}
    for (e, (x, s)), f in D.dart_faces().items():
        faces.setdefault(find(x), set()).add(f)
    counts = {}
    for i in range(len(D.crossings)):
        counts[find(i)] = counts.get(find(i), 0) + 1
    return all(len(faces[r]) == counts[r] + 2 for r in counts)


# --- diagram-level operations (built on linkforge.tangle) ------------------------

def satellite(D, c, P):
    """Replace component ``c`` by the pattern ``P``; see :func:`linkforge.tangle.satellite`."""
    from .tangle import satellite as _sat
    return _sat(D, c, P)


def connected_sum(D1, c1, D2, c2):
    from .tangle import connected_sum as _cs
    return _cs(D1, c1, D2, c2)


def bing_double(D, c):
    from .tangle import bing_double as _bd
    return _bd(D, c)
