"""Exact transfers of Kahler differential forms along finite correspondences.

The package works over characteristic-zero fields (rationals or a simple
extension given by a minimal polynomial), with hand-rolled Groebner bases
underneath so every answer is exact and reproducible.  The main entry
points:

* ``omega_module`` presents the module of p-forms of an affine coordinate
  ring, absolutely or relative to a base.
* ``GaloisCoverDatum`` packages a finite free group quotient; ``descend``
  and ``bidual_descent_check`` push invariant forms down to the base.
* ``PrimeCorrespondence`` and ``CycleCorrespondence`` carry forms backward
  along finite correspondences; ``compose_cycles`` and
  ``verify_composition`` check the composition law on witnessed fiber
  products.
* ``load_workspace`` reads varieties, covers, forms and correspondences
  from a TOML file; the ``corrforms`` script exposes the same checks on
  the command line.
"""

from .scalars import Field, FieldElement, QQ, make_extension
from .polyring import Poly, PolyRing, format_poly
from .rings import (FracElement, FractionField, QuotientRing, RingHom,
                    compose, generic_rank, localize)
from .modules import ModuleMap, PresentedModule, Span, free_module
from .kaehler import (AffineVariety, EqualizerReport, PForm,
                      RegularityResult, de_rham_d, equalizer_check,
                      forms_equal, omega, omega_module, pullback,
                      regularity, smoothness_probe, wedge_indices)
from .descent import (CheckReport, GaloisCoverDatum, average,
                      bidual_descent_check, descend, descend_rational,
                      ensure_valid, form_action_map, invariant_forms,
                      is_invariant, verify_cover)
from .transfer import (CycleCorrespondence, FiberComponent, FiberWitness,
                       PrimeCorrespondence, ResultComponent, compose_cycles,
                       ensure_well_defined, graph_correspondence,
                       pushforward, transfer_cycle, transfer_prime,
                       trivial_cover, verify_composition,
                       verify_well_definedness)
from .textio import (field_from_text, format_form, format_presentation,
                     load_workspace, parse_form, parse_minpoly, parse_poly)
from .errors import (CorrformsError, NotDescendable, NotEtale, ParseError,
                     RankMismatch, WitnessInvalid, WorkspaceError)

__version__ = "0.1.0"

__all__ = [
    "AffineVariety", "CheckReport", "CorrformsError", "CycleCorrespondence",
    "EqualizerReport", "FiberComponent", "FiberWitness", "Field",
    "FieldElement", "FracElement", "FractionField", "GaloisCoverDatum",
    "ModuleMap", "NotDescendable", "NotEtale", "PForm", "ParseError", "Poly",
    "PolyRing", "PresentedModule", "PrimeCorrespondence", "QQ",
    "QuotientRing", "RankMismatch", "RegularityResult", "ResultComponent",
    "RingHom", "Span", "WitnessInvalid", "WorkspaceError", "average",
    "bidual_descent_check", "compose", "compose_cycles", "de_rham_d",
    "descend", "descend_rational", "ensure_valid", "ensure_well_defined",
    "equalizer_check", "field_from_text", "form_action_map", "format_form",
    "format_poly", "format_presentation", "forms_equal", "free_module",
    "generic_rank", "graph_correspondence", "invariant_forms",
    "is_invariant", "load_workspace", "localize", "make_extension", "omega",
    "omega_module", "parse_form", "parse_minpoly", "parse_poly",
    "pullback", "pushforward", "regularity", "smoothness_probe",
    "transfer_cycle", "transfer_prime", "trivial_cover",
    "verify_composition", "verify_cover", "verify_well_definedness",
    "wedge_indices",
]
