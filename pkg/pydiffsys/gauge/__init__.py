# -*- coding: utf-8 -*-

from .transformation import (GaugeTransformation, apply_gauge, compose, normalize_leading,
                             shift_constant)
from .sauvage import SauvageFactorization, sauvage_factorize
from .reduction import ReductionState, reduce_norm_step
from .pipeline import NormalizationResult, normalize_system, replay, verify_monodromy

__all__ = ['GaugeTransformation', 'apply_gauge', 'compose', 'normalize_leading',
           'shift_constant', 'SauvageFactorization', 'sauvage_factorize', 'ReductionState',
           'reduce_norm_step', 'NormalizationResult', 'normalize_system', 'replay',
           'verify_monodromy']
