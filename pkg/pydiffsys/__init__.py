# -*- coding: utf-8 -*-

from .scalar import ExactComplex
from .laurent import LaurentPoly, MatrixLaurentPoly, RationalMatrix
from .difference import DifferenceSystem, verify_fuchs, monodromy_difference
from .qdifference import QDifferenceSystem, monodromy_q
from .elliptic import PeriodLattice
from .sigma_form import fit_sigma_form
from .gauge import GaugeTransformation, apply_gauge, normalize_system
from .utils import SystemReader

__version__ = '0.1.0'
__all__ = ['ExactComplex', 'LaurentPoly', 'MatrixLaurentPoly', 'RationalMatrix',
           'DifferenceSystem', 'verify_fuchs', 'monodromy_difference', 'QDifferenceSystem',
           'monodromy_q', 'PeriodLattice', 'fit_sigma_form', 'GaugeTransformation',
           'apply_gauge', 'normalize_system', 'SystemReader']
