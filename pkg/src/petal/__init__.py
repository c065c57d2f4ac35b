"""Petal projections of knots: sequences, diagrams, invariants, search and stick realisations."""

from .diagrams import (BraidWord, GridDiagram, PlanarDiagram, braid_to_pd, grid_to_pd,
                       petal_to_grid, petal_to_pd_geometric)
from .errors import PetalError
from .identify import KnotDatabase, KnotRecord, collision_report, identify, load_table
from .invariants import (Fingerprint, alexander, bracket_bruteforce, determinant, fingerprint,
                         jones, kauffman_bracket, writhe)
from .polynomial import LaurentPolynomial
from .search import classify_all, enumerate_sequences, petal_number, verify_table
from .sequence import (PetalSequence, canonicalize, compose, mirror, parse_sequence, reduce,
                       stabilize, torus_sequence, validate)
from .sticks import StickConformation, petal_to_sticks, project_to_pd
from .svg import render_svg

__version__ = "0.1.0"
