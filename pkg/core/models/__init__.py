from .interval import Interval, MonotoneClass, POSITIVE_REALS, REAL_LINE
from .survival import SurvivalModel, Semiinvariants
from .slope import SlopeFunction, SlopeDiagnosis, SignClass, Verdict
from .family import HazardLocationFamily, FamilySpec
from .xd import XDModel, FrailtyLink
from .report import ConvergenceReport, ConvergenceStep, Side

__all__ = [
    'Interval', 'MonotoneClass', 'POSITIVE_REALS', 'REAL_LINE',
    'SurvivalModel', 'Semiinvariants',
    'SlopeFunction', 'SlopeDiagnosis', 'SignClass', 'Verdict',
    'HazardLocationFamily', 'FamilySpec',
    'XDModel', 'FrailtyLink',
    'ConvergenceReport', 'ConvergenceStep', 'Side',
]
