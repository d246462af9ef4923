"""Wirtinger presentations, longitudes and zero-surgery presentations.

Generators correspond to over-arcs: an arc begins right after the strand
passes under a crossing.  On each component the arc through the basepoint
edge comes first and the others follow the orientation, so the meridian of
a component is its first generator.  A crossing with over-arc ``o``,
incoming under-arc ``u`` and outgoing under-arc ``v`` contributes

    x_o x_u x_o^-1 x_v^-1   (positive crossing)
    x_o^-1 x_u x_o x_v^-1   (negative crossing)
"""
import warnings
from dataclasses import dataclass, field

from . import fpgroup


class PresentationError(ValueError):
    pass


@dataclass
class Presentation:
    generator_count: int
    relators: list
    meridian_of_component: dict = field(default_factory=dict)
    longitude_of_component: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)
    component_of_generator: dict = field(default_factory=dict)

    @property
    def component_count(self):
        return len(self.meridian_of_component)

    def check(self):
        for w in list(self.relators) + list(self.words.values()):
            for a in w:
                if not 1 <= abs(a) <= self.generator_count:
                    raise PresentationError(f"generator x{abs(a)} out of range "
                                            f"1..{self.generator_count}")
        mer = list(self.meridian_of_component.values())
        if len(set(mer)) != len(mer):
            raise PresentationError("two components share a meridian generator")
        return self

    def render(self):
        lines = [f"generators {self.generator_count}"]
        lines += [f"relator {fpgroup.format_word(r)}" for r in self.relators]
        for k, g in sorted(self.meridian_of_component.items()):
            lines.append(f"meridian {k} x{g}")
        for name, w in self.words.items():
            lines.append(f"word {name} {fpgroup.format_word(w)}")
        return "\n".join(lines) + "\n"

    def infer_components(self):
        """Fill ``component_of_generator`` (0-based) from conjugation relators.

        Generators joined by a relator of the form o u o^-1 v^-1 (either
        sign) lie on one component; each class must contain a meridian.
        """
        parent = list(range(self.generator_count + 1))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for r in self.relators:
            shape = conjugation_shape(r)
            if shape:
                _, u, v, _ = shape
                parent[find(u)] = find(v)
            elif len(r) == 2 and r[0] * r[1] < 0:
                parent[find(abs(r[0]))] = find(abs(r[1]))
        comp_of_root = {}
        for k, g in sorted(self.meridian_of_component.items()):
            comp_of_root[find(g)] = k - 1
        out = {}
        for g in range(1, self.generator_count + 1):
            r = find(g)
            if r not in comp_of_root:
                raise PresentationError(f"generator x{g} is not tied to any meridian")
            out[g] = comp_of_root[r]
        self.component_of_generator = out
        return out


def conjugation_shape(r):
    """Return ``(o, u, v, sign)`` if ``r`` is x_o^s x_u x_o^-s x_v^-1, else None."""
    if len(r) != 4:
        return None
    a, b, c, d = r
    if b > 0 and d < 0 and c == -a and abs(a) != b:
        return abs(a), b, -d, (1 if a > 0 else -1)
    return None


def arcs(D):
    """Map each edge to its generator number (1-based), plus the per-component lists."""
    gen = {}
    per_comp = []
    n = 0
    for comp in D.components:
        if not comp:
            n += 1
            per_comp.append([n])
            continue
        # an arc starts at an edge that leaves a crossing as the under strand
        starts = [i for i, e in enumerate(comp)
                  if any(s == 2 for _, s in D.occurrences(e))]
        if not starts:
            n += 1
            for e in comp:
                gen[e] = n
            per_comp.append([n])
            continue
        # the arc through the basepoint edge may begin before it
        first = 0 if 0 in starts else starts[-1]
        gens = []
        order = comp[first:] + comp[:first]
        for i, e in enumerate(order):
            if i == 0 or any(s == 2 for _, s in D.occurrences(e)):
                n += 1
                gens.append(n)
            gen[e] = n
        per_comp.append(gens)
    return gen, per_comp


def _crossing_data(D, gen):
    for x, q in enumerate(D.crossings):
        yield gen[q[1]], gen[q[0]], gen[q[2]], D.signs[x]


def wirtinger_presentation(D):
    gen, per_comp = arcs(D)
    rels = []
    for o, u, v, s in _crossing_data(D, gen):
        rels.append((o, u, -o, -v) if s > 0 else (-o, u, o, -v))
    comp_of = {}
    for k, gens in enumerate(per_comp):
        for g in gens:
            comp_of[g] = k
    P = Presentation(
        generator_count=sum(len(g) for g in per_comp),
        relators=rels,
        meridian_of_component={k + 1: gens[0] for k, gens in enumerate(per_comp)},
        component_of_generator=comp_of)
    P.longitude_of_component = {c: longitude_word(D, c, gen=gen, per_comp=per_comp)
                                for c in range(1, D.component_count + 1)}
    return P


def longitude_word(D, c, gen=None, per_comp=None):
    """Zero-framed longitude of component ``c`` as a word in the Wirtinger generators.

    Reading the undercrossings of ``c`` from its basepoint gives
    ``w = x_{o_n}^{s_n} ... x_{o_1}^{s_1}``; the result is ``w`` times the
    meridian to the power cancelling the self-exponent of ``w``.
    """
    if gen is None:
        gen, per_comp = arcs(D)
    k = D._check_component(c)
    comp = D.components[k]
    if not comp:
        return ()
    mer = per_comp[k][0]
    letters = []
    self_exp = 0
    for e in comp:
        for x, s in D.occurrences(e):
            if s == 0:
                q = D.crossings[x]
                o = gen[q[1]]
                sign = D.signs[x]
                letters.append(o if sign > 0 else -o)
                if D.component_of_edge(q[1]) == k:
                    self_exp += sign
    w = tuple(reversed(letters)) + (-mer if self_exp > 0 else mer,) * abs(self_exp)
    return fpgroup.free_reduce(w)


def zero_surgery_presentation(D, surgered=None):
    """Wirtinger presentation plus one longitude relator per surgered component."""
    P = wirtinger_presentation(D)
    if surgered is None:
        surgered = range(1, D.component_count + 1)
    for c in sorted(set(surgered)):
        D._check_component(c)
        lam = P.longitude_of_component[c]
        if lam:
            P.relators.append(lam)
    return P


# --- .fpg text format -------------------------------------------------------------

def load_presentation(text):
    n = None
    rels, mer, words = [], {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "generators":
                n = int(rest)
            elif n is None:
                raise PresentationError("'generators N' must come first")
            elif key == "relator":
                w = fpgroup.parse_word(rest, n)
                r = fpgroup.free_reduce(w)
                if not r:
                    warnings.warn(f"line {lineno}: relator reduces to the empty word")
                rels.append(r)
            elif key == "meridian":
                k, g = rest.split()
                mer[int(k)] = fpgroup.parse_word(g, n)[0]
            elif key == "word":
                name, _, w = rest.partition(" ")
                words[name] = fpgroup.parse_word(w, n)
            else:
                raise PresentationError(f"unknown keyword {key!r}")
        except ValueError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
    if n is None:
        raise PresentationError("missing 'generators N' header")
    return Presentation(n, rels, mer, {}, words).check()


def eliminate_generators(P):
    """Tietze pass: drop generators defined by conjugation relators.

    Returns a new presentation and a map old generator -> word in the new
    generators.  Meridians are never eliminated.
    """
    keep_fixed = set(P.meridian_of_component.values())
    defs = {}
    rels = [list(r) for r in P.relators]
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(rels):
            shape = conjugation_shape(tuple(r))
            if not shape:
                continue
            o, u, v, s = shape
            if v in keep_fixed or v in (o, u):
                continue
            body = (o * s, u, -o * s)
            defs[v] = body
            del rels[i]
            rels = [_substitute(r2, v, body) for r2 in rels]
            for g in list(defs):
                defs[g] = tuple(_substitute(list(defs[g]), v, body))
            changed = True
            break
    remaining = [g for g in range(1, P.generator_count + 1) if g not in defs]
    renum = {g: i + 1 for i, g in enumerate(remaining)}

    def rn(w):
        return tuple(renum[abs(a)] * (1 if a > 0 else -1) for a in w)

    new = Presentation(
        len(remaining),
        [r for r in (fpgroup.free_reduce(rn(r)) for r in rels) if r],
        {k: renum[g] for k, g in P.meridian_of_component.items()},
        {k: fpgroup.free_reduce(rn(_expand(w, defs))) for k, w in P.longitude_of_component.items()},
        {k: fpgroup.free_reduce(rn(_expand(w, defs))) for k, w in P.words.items()},
    )
    old_to_new = {g: (fpgroup.free_reduce(rn(_expand((g,), defs)))) for g in range(1, P.generator_count + 1)}
    return new, old_to_new


def _substitute(word, g, body):
    out = []
    for a in word:
        if abs(a) == g:
            out.extend(body if a > 0 else fpgroup.inverse(body))
        else:
            out.append(a)
    return list(fpgroup.free_reduce(out))


def _expand(word, defs):
    out = list(word)
    for g, body in defs.items():
        out = _substitute(out, g, body)
    return tuple(out)

