"""Magnus expansions and Milnor's link invariants.

A :class:`MagnusSeries` is an element of the truncated power series ring in
non-commuting variables X_1..X_m; monomials are tuples of 0-based variable
indices.  The free generator x_i maps to 1 + X_i.

For a diagram, each Wirtinger generator is rewritten as a conjugate of its
component's meridian by walking along the components and substituting the
crossing relations; every pass fixes one more degree.  The value of
mu(i_1 ... i_r) is the coefficient of X_{i_1} ... X_{i_{r-1}} in the
expansion of the longitude of component i_r.
"""
from itertools import combinations, permutations
from math import gcd

from . import fpgroup
from .wirtinger import conjugation_shape, wirtinger_presentation


class MilnorError(ValueError):
    pass


class MagnusSeries:
    __slots__ = ("m", "q", "coeffs")

    def __init__(self, m, q, coeffs=None):
        self.m = m
        self.q = q
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v and len(k) <= q}

    @classmethod
    def one(cls, m, q):
        return cls(m, q, {(): 1})

    @classmethod
    def generator(cls, m, q, i, power=1):
        """Image of x_i^power (``i`` 0-based); negative powers expand geometrically."""
        if power >= 0:
            out = cls.one(m, q)
            for _ in range(power):
                out = out * cls(m, q, {(): 1, (i,): 1})
            return out
        inv = cls(m, q, {(i,) * k: (-1) ** k for k in range(q + 1)})
        out = cls.one(m, q)
        for _ in range(-power):
            out = out * inv
        return out

    def __mul__(self, other):
        q = self.q
        out = {}
        for u, a in self.coeffs.items():
            room = q - len(u)
            for v, b in other.coeffs.items():
                if len(v) <= room:
                    k = u + v
                    out[k] = out.get(k, 0) + a * b
        return MagnusSeries(self.m, q, out)

    def inverse(self):
        if self.coeffs.get((), 0) != 1:
            raise MilnorError("only series with constant term 1 are invertible here")
        n = MagnusSeries(self.m, self.q, {k: -v for k, v in self.coeffs.items() if k})
        out = MagnusSeries.one(self.m, self.q)
        power = MagnusSeries.one(self.m, self.q)
        for _ in range(self.q):
            power = power * n
            if not power.coeffs:
                break
            out = out + power
        return out

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return MagnusSeries(self.m, self.q, out)

    def __eq__(self, other):
        return isinstance(other, MagnusSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_one(self):
        return self.coeffs == {(): 1}

    def coeff(self, indices):
        return self.coeffs.get(tuple(indices), 0)

    def truncated(self, q):
        return MagnusSeries(self.m, q, self.coeffs)

    def __repr__(self):
        terms = []
        for k in sorted(self.coeffs, key=lambda k: (len(k), k)):
            mono = "".join(f"X{i + 1}" for i in k) or "1"
            terms.append(f"{self.coeffs[k]}*{mono}")
        return " + ".join(terms) or "0"


def magnus_expand(word, q, m=None):
    """Magnus expansion of a word whose letters are free generators 1..m."""
    if m is None:
        m = max((abs(a) for a in word), default=1)
    one = MagnusSeries.one(m, q)
    images = [None] + [MagnusSeries(m, q, {(): 1, (i,): 1}) for i in range(m)]
    return fpgroup.evaluate(word, images, one)


def lcs_nontrivial(word, q):
    """True iff ``word`` is nontrivial in F / F_q (F_1 = F)."""
    if q < 2:
        return False
    return not magnus_expand(fpgroup.free_reduce(word), q - 1).is_one()


# --- reduction to meridians ---------------------------------------------------------

def _walk(P):
    """Per component: list of (o, s, v) steps starting from the meridian generator."""
    succ = {}
    for r in P.relators:
        shape = conjugation_shape(r)
        if not shape:
            raise MilnorError(f"relator {fpgroup.format_word(r)} is not a Wirtinger relator")
        o, u, v, s = shape
        succ[u] = (o, s, v)
    walks = {}
    for k, mer in P.meridian_of_component.items():
        steps = []
        g = mer
        seen = {g}
        while g in succ:
            o, s, v = succ[g]
            if v in seen:
                break
            steps.append((o, s, g, v))
            seen.add(v)
            g = v
        walks[k] = steps
    return walks


def meridian_reduction(P, q):
    """Generator -> (component, conjugator word over meridians) after ``q`` passes.

    Meridian words use the component numbers as letters, so generator g
    equals ``C m_k C^-1`` modulo the (q+1)-st lower central series term.
    """
    comp = P.component_of_generator or P.infer_components()
    walks = _walk(P)
    conj = {g: () for g in range(1, P.generator_count + 1)}
    for _ in range(q):
        old = dict(conj)
        for k, steps in walks.items():
            for o, s, u, v in steps:
                ko = comp[o] + 1
                O = fpgroup.conjugate((ko,), old[o])
                conj[v] = fpgroup.multiply(fpgroup.power(O, s), conj[u])
    return {g: (comp[g] + 1, conj[g]) for g in conj}


class MilnorData:
    """Longitude expansions of a diagram, truncated at degree ``q``."""

    def __init__(self, D, q):
        self.D = D
        self.m = D.component_count
        self.q = q
        P = wirtinger_presentation(D)
        comp = P.component_of_generator
        m = self.m
        mer = [MagnusSeries(m, q, {(): 1, (i,): 1}) for i in range(m)]
        S = {g: mer[comp[g]] for g in range(1, P.generator_count + 1)}
        walks = _walk(P)
        for _ in range(q + 1):
            old = dict(S)
            inv = {}
            for k, steps in walks.items():
                for o, s, u, v in steps:
                    if o not in inv:
                        inv[o] = old[o].inverse()
                    a, b = (old[o], inv[o]) if s > 0 else (inv[o], old[o])
                    S[v] = a * S[u] * b
        self.presentation = P
        self.generator_images = S
        images = [None] + [S[g] for g in range(1, P.generator_count + 1)]
        self.longitudes = {}
        for c in range(1, m + 1):
            self.longitudes[c] = fpgroup.evaluate(
                P.longitude_of_component[c], images, MagnusSeries.one(m, q))
        self._cache = {}

    def word_image(self, word):
        """Expansion of a word in the Wirtinger generators."""
        images = [None] + [self.generator_images[g]
                           for g in range(1, self.presentation.generator_count + 1)]
        return fpgroup.evaluate(word, images, MagnusSeries.one(self.m, self.q))

    def raw(self, I):
        I = tuple(I)
        if I not in self._cache:
            self._cache[I] = self.longitudes[I[-1]].coeff([i - 1 for i in I[:-1]])
        return self._cache[I]

    def indeterminacy(self, I):
        I = tuple(I)
        g = 0
        r = len(I)
        for k in range(2, r):
            for keep in combinations(range(r), k):
                J = tuple(I[i] for i in keep)
                for t in range(k):
                    g = gcd(g, self.raw(J[t:] + J[:t]))
        return g

    def mu(self, I):
        I = _check_index(I, self.m)
        if len(I) - 1 > self.q:
            raise MilnorError(f"truncation degree {self.q} too small for index of length {len(I)}")
        value = self.raw(I)
        delta = self.indeterminacy(I)
        return (value % delta if delta else value), delta


def _check_index(I, m):
    if isinstance(I, str):
        I = tuple(int(ch) for ch in I)
    I = tuple(I)
    if len(I) < 2:
        raise MilnorError("a multi-index needs at least two entries")
    for i in I:
        if not 1 <= i <= m:
            raise MilnorError(f"index {i} out of range 1..{m}")
    return I


def milnor_mu(D, I, q=None):
    """(value, indeterminacy) of mu-bar(I); the value is reduced mod a nonzero indeterminacy."""
    I = _check_index(I, D.component_count)
    q = len(I) if q is None else q
    if q < len(I) - 1:
        raise MilnorError(f"q={q} is too small for an index of length {len(I)}")
    return MilnorData(D, q).mu(I)


def index_key(I):
    return "".join(map(str, I)) if all(i < 10 for i in I) else ",".join(map(str, I))


def mu_all_upto(D, length):
    """Table of mu-bar over non-repeating multi-indices of length 2..``length``."""
    m = D.component_count
    length = min(length, m)
    if length < 2:
        return {}
    data = MilnorData(D, length)
    table = {}
    for r in range(2, length + 1):
        for I in permutations(range(1, m + 1), r):
            table[index_key(I)] = data.mu(I)
    return table
