"""Diagonal models of repetitive higher cluster categories of type A and of
the bounded derived category of type A, with exact combinatorial checks."""
from .polygon import Diagonal, ModelParams, Region, crosses, enumerate_diagonals, rho
from .quiver import (QuiverIsomorphism, TranslationQuiver, find_isomorphism, hammock,
                     hammock_hom, mesh_relations, power, verify_stable)
from .orbit_model import BandTopology, band_topology, build_gamma, tau_m
from .cover import (CoverVertex, FunctorAction, FunctorKind, ext1_crossing,
                    fundamental_bijection, hom_dim_derived, orbit_ext, orbit_hom)
from .tilting import (Angulation, TiltingObject, enumerate_angulations, orbit_mutate,
                      tilting_objects, verify_tilting_bruteforce)
from .embedding import BandSelection, embed, quotient_ar, t_value
from .derived import (WindowParams, build_window, power_decomposition, tau2,
                      varrho_action, verify_derived_iso)

__version__ = "0.1.0"
