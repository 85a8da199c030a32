#monoid_shift/__init__.py
from .presentation import (
    LEFT, RIGHT, GeneratorId, Outcome, Presentation, PresentationError,
    ValidationIssue, ValidationReport, catalog, catalog_names, catalog_status,
    from_rules, load_presentation, parse_presentation, serialize_presentation
)
from .rewrite import (
    UNIT, ZERO, NormalForm, RewriteError, RewritingSystem, Word,
    format_word, parse_word
)
from .structure import (
    CollisionAutomaton, HypothesisReport, InjectivityReport, Special,
    StructureAnalyzer, StructureError, WitnessReport, shortest_probe
)
from .subshift import (
    CyclicWord, FiniteContext, PropertyACheckParams, PropertyAReport,
    Subshift, SubshiftError, WindowReport, YPointDescription
)
from .reconstruction import (
    ContextClassTable, IsoCertificate, QuotientReport, ReconstructionError,
    ScaleTooSmallError, certify_isomorphism, quotient_projection,
    reconstruct_ball, symbolic_product, y_class_of
)
