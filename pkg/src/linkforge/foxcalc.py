"""Fox calculus and the Alexander and Conway polynomials.

Group-ring elements of Z[Z^m] are :class:`LaurentPoly` objects in the
variables t_1..t_m, one per link component; a generator maps to the
variable of its component.  Polynomials that are only defined up to units
are returned in the canonical form of :meth:`LaurentPoly.normalized`.
"""
from itertools import combinations

from .diagram import Diagram
from .laurent import LaurentPoly, NotDivisible, determinant, divexact, gcd_list
from .wirtinger import wirtinger_presentation


class FoxError(ValueError):
    pass


def abelian_image(word, component_of_generator, nvars):
    exp = [0] * nvars
    for a in word:
        exp[component_of_generator[abs(a)]] += 1 if a > 0 else -1
    return LaurentPoly.monomial(exp)


def fox_derivative(word, g, component_of_generator, nvars):
    """Fox derivative d(word)/d(x_g) in Z[t_1^+-1, ..., t_nvars^+-1]."""
    terms = {}
    prefix = [0] * nvars
    for a in word:
        k = component_of_generator[abs(a)]
        if abs(a) == g:
            if a > 0:
                e = tuple(prefix)
                terms[e] = terms.get(e, 0) + 1
            else:
                prefix[k] -= 1
                e = tuple(prefix)
                terms[e] = terms.get(e, 0) - 1
                continue
        prefix[k] += 1 if a > 0 else -1
    return LaurentPoly(nvars, terms)


def alexander_matrix(P, nvars=None):
    comp = P.component_of_generator or P.infer_components()
    nvars = nvars if nvars is not None else max(comp.values()) + 1
    return [[fox_derivative(r, g, comp, nvars) for g in range(1, P.generator_count + 1)]
            for r in P.relators]


def _minor_gcd(matrix, cols, nvars):
    rows = len(matrix)
    k = len(cols)
    if k == 0:
        return LaurentPoly.const(nvars, 1)
    if rows < k:
        return LaurentPoly(nvars)
    minors = []
    for chosen in combinations(range(rows), k):
        sub = [[matrix[i][j] for j in cols] for i in chosen]
        minors.append(determinant(sub, nvars))
        g = gcd_list(minors)
        if len(g.terms) == 1 and abs(next(iter(g.terms.values()))) == 1:
            return g
        minors = [g]
    return minors[0]


def alexander_poly(D, component=1):
    """Multivariable Alexander polynomial in canonical form.

    Uses the Fox matrix of the Wirtinger presentation with the meridian
    column of ``component`` deleted; for links the gcd of maximal minors is
    divided by ``t_component - 1``.  Returns the zero polynomial for split
    diagrams.
    """
    if isinstance(D, Diagram):
        P = wirtinger_presentation(D)
        m = D.component_count
    else:
        P = D
        m = P.component_count
    if m == 0:
        raise FoxError("the empty diagram has no Alexander polynomial")
    if not 1 <= component <= m:
        raise FoxError(f"invalid component {component}")
    M = alexander_matrix(P, m)
    skip = P.meridian_of_component[component]
    cols = [j for j in range(P.generator_count) if j != skip - 1]
    g = _minor_gcd(M, cols, m)
    if m >= 2 and g:
        t = LaurentPoly.var(m, component - 1) - 1
        try:
            g = divexact(g, t)
        except NotDivisible:
            raise FoxError("minor gcd is not divisible by t - 1; diagram is not a link diagram") from None
    return g.normalized()


def one_variable(delta):
    """(t - 1) * Delta(t, ..., t) for a link with at least two components."""
    if delta.nvars < 2:
        raise FoxError("one_variable needs at least two variables")
    t = LaurentPoly.var(1, 0)
    return (delta.collapse() * (t - 1)).normalized()


def knot_alexander(D):
    """One-variable Alexander polynomial of any diagram (Torres normalisation for links)."""
    delta = alexander_poly(D)
    return delta if delta.nvars == 1 else one_variable(delta)


def conway_from_alexander(delta1, lowest_sign=1):
    """Conway polynomial as a coefficient list ``[c0, c1, ...]`` in z.

    Solves Nabla(s^-1 - s) = +-s^k Delta(s^2).  The overall sign is not
    determined by Delta; it is fixed by giving the lowest nonzero
    coefficient the sign ``lowest_sign``.  For a knot that coefficient is
    Nabla(0) = 1; for a two-component link it is the linking number.
    """
    if delta1.nvars != 1:
        raise FoxError("expected a one-variable polynomial")
    if not delta1:
        return []
    lo, coeffs = delta1.coeffs_1var()
    hi = lo + len(coeffs) - 1
    # s-exponent of t^e is 2e - (lo + hi), symmetric about 0
    P = {2 * (lo + k) - (lo + hi): c for k, c in enumerate(coeffs) if c}
    if all(P.get(-e, 0) == c for e, c in P.items()):
        pass
    elif all(P.get(-e, 0) == -c for e, c in P.items()):
        pass
    else:
        raise FoxError("polynomial is not symmetric up to units")
    out = {}
    while P:
        d = max(P)
        if d < 0:
            raise FoxError("polynomial is not in the image of the Conway substitution")
        c = P[d] * (-1) ** d
        out[d] = c
        # subtract c * (s^-1 - s)^d
        for j in range(d + 1):
            e = -d + 2 * j
            term = c * _binom(d, j) * (-1) ** j
            v = P.get(e, 0) - term
            if v:
                P[e] = v
            else:
                P.pop(e, None)
    top = max(out)
    coeffs = [out.get(k, 0) for k in range(top + 1)]
    low = next(c for c in coeffs if c)
    if (low > 0) != (lowest_sign > 0):
        coeffs = [-c for c in coeffs]
    return coeffs


def _binom(n, k):
    from math import comb
    return comb(n, k)


def format_conway(coeffs):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def mu123_squared(conway):
    """Coefficient of z^4."""
    return conway[4] if len(conway) > 4 else 0


def torres_check(delta_L, delta_sub, lk):
    """Torres condition for deleting the first component.

    ``delta_sub`` is the polynomial of the sublink without component 1 and
    ``lk`` lists the linking numbers of component 1 with components 2..m.
    """
    m = delta_L.nvars
    if delta_sub.nvars != m - 1 or len(lk) != m - 1:
        raise FoxError("variable count mismatch")
    left = delta_L.substitute_one(0, 1)
    if m == 2:
        l = lk[0]
        if l == 0:
            factor = LaurentPoly(1)
        else:
            n = abs(l)
            factor = LaurentPoly(1, {(k,): 1 for k in range(n)})
    else:
        factor = LaurentPoly.monomial(list(lk)) - 1
    right = factor * delta_sub
    if not left or not right:
        return not left and not right
    return left.unit_equal(right)


def arf_invariant(delta):
    """Arf invariant of a knot from its Alexander polynomial (Levine's criterion)."""
    if delta.nvars != 1:
        raise FoxError("expected a one-variable polynomial")
    if abs(delta(1)) != 1:
        raise FoxError("Delta(1) must be +-1 for a knot")
    v = 0
    for (e,), c in delta.terms.items():
        v += c * (-1) ** (e % 2)
    return 0 if abs(v) % 8 in (1, 7) else 1


def fundamental_identity_holds(word, component_of_generator, nvars, ngens):
    """Check sum_g (dw/dx_g)(t_g - 1) == ab(w) - 1."""
    total = LaurentPoly(nvars)
    for g in range(1, ngens + 1):
        t = LaurentPoly.var(nvars, component_of_generator[g]) - 1
        total = total + fox_derivative(word, g, component_of_generator, nvars) * t
    return total == abelian_image(word, component_of_generator, nvars) - 1
