"""Free-group words and their images in other groups.

A word is a tuple of nonzero ints: ``g`` stands for generator ``g`` and
``-g`` for its inverse.  Generators are numbered from 1 so the signed
encoding is unambiguous.

Target groups are duck-typed: :func:`evaluate` needs elements that support
``*``, an ``inverse()`` method and equality, plus an identity passed in by
the caller.
"""


def free_reduce(word):
    """Freely reduce ``word``; single stack pass, so the result is canonical."""
    out = []
    for a in word:
        if not a:
            raise ValueError("0 is not a generator")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(word):
    return tuple(-a for a in reversed(word))


def multiply(*words):
    out = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def power(word, n):
    if n < 0:
        return power(inverse(word), -n)
    return free_reduce(tuple(word) * n)


def commutator(u, v):
    """The commutator ``u v u^-1 v^-1``, freely reduced."""
    return multiply(u, v, inverse(u), inverse(v))


def conjugate(w, by):
    """``by * w * by^-1``."""
    return multiply(by, w, inverse(by))


def abelianize(word, component_of_generator, ncomponents):
    """Exponent sum of ``word`` per component.

    ``component_of_generator`` maps a generator (1-based) to a 0-based
    component index.
    """
    vec = [0] * ncomponents
    for a in word:
        vec[component_of_generator[abs(a)]] += 1 if a > 0 else -1
    return tuple(vec)


def evaluate(word, images, identity):
    """Image of ``word`` under the assignment ``images[g]`` for generators g.

    ``images`` may be a dict or a sequence indexed from 1 (index 0 unused).
    """
    result = identity
    cache = {}
    for a in word:
        g = abs(a)
        try:
            img = images[g]
        except (KeyError, IndexError):
            raise KeyError(f"no image for generator x{g}") from None
        if a < 0:
            if g not in cache:
                cache[g] = img.inverse()
            img = cache[g]
        result = result * img
    return result


def parse_word(text, ngens=None):
    """Parse space separated tokens ``xN`` (generator) and ``XN`` (inverse)."""
    word = []
    for tok in text.split():
        if len(tok) < 2 or tok[0] not in "xX" or not tok[1:].isdigit():
            raise ValueError(f"malformed word token {tok!r}")
        g = int(tok[1:])
        if g < 1 or (ngens is not None and g > ngens):
            raise ValueError(f"generator {tok} out of range 1..{ngens}")
        word.append(g if tok[0] == "x" else -g)
    return tuple(word)


def format_word(word):
    return " ".join(f"x{a}" if a > 0 else f"X{-a}" for a in word)
