# -*- coding: utf-8 -*-
__version__ = '0.1.0'

from .core import (ConvergenceError, FitError, KeyedList, ParseError,
                   RobustnessError, UnsupportedError, ValidationError)
from .hilbert import (AtomLevel, BlockadedBasis, build_basis, named_state,
                      qubit_projector, rydberg_projector)
from .dynamics import (DriveSpec, ErrorModel, PulseSpec, UnitaryReport,
                       apply_error, bloch_trajectory, build_hamiltonian,
                       enclosed_phase, propagate, pulse_unitary)
from .protocols import (Sequence, TargetGate, ccz_robust_sequence,
                        ccz_sequence, parse_sequence, protocol_I,
                        protocol_Ia, protocol_II, protocol_IIa,
                        protocol_IIb, protocol_III, serialize_sequence)
from .metrics import (FidelityReport, SeriesFit, SusceptibilityTriple,
                      cross_susceptibility, evaluate, fidelity_triple,
                      gate_infidelity, series_fit, susceptibilities)
from .refgates import (LevineParams, jaksch_sequence, levine_calibrate,
                       levine_sequence)
from .optimize import (PUBLISHED_S3, ObjectiveReport, S3Params, polish_s3,
                       s3_objective, search_s3, verify_ccz)
from .catalog import CATALOG
