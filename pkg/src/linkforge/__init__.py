"""Link diagrams and the invariants used to study them: linking numbers,
Wirtinger presentations, Fox calculus, Milnor invariants, SL(2, p)
representations, iterated Bing doubles and signature integrals."""
from .diagram import (Diagram, DiagramError, bing_double, connected_sum, linking_matrix,
                      parse_pd, render_pd, satellite, sublink)
from .tangle import AnnularPattern, bing_pattern, cut_diagram, identity_pattern, infect

__version__ = "0.1.0"

__all__ = [
    "AnnularPattern", "Diagram", "DiagramError", "bing_double", "bing_pattern",
    "connected_sum", "cut_diagram", "identity_pattern", "infect", "linking_matrix",
    "parse_pd", "render_pd", "satellite", "sublink",
]
