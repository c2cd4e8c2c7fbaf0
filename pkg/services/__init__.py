"""
Módulo de serviços
Construções, automorfismos, hiperplanos, valorações e relatórios
"""

from .construction_service import ConstructionService, construction_service
from .automorphism_service import AutomorphismService, automorphism_service
from .hyperplane_service import HyperplaneService, hyperplane_service
from .valuation_service import ValuationService, valuation_service
from .valgeom_service import ValuationGeometryService, valgeom_service
from .report_service import ReportService, report_service

__all__ = [
    'ConstructionService', 'construction_service',
    'AutomorphismService', 'automorphism_service',
    'HyperplaneService', 'hyperplane_service',
    'ValuationService', 'valuation_service',
    'ValuationGeometryService', 'valgeom_service',
    'ReportService', 'report_service'
]
