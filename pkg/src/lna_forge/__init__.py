"""lna-forge: design-space exploration for inductively degenerated CS LNAs."""

from .errors import (EmptyLibrary, InconsistentLimits, InvalidBand,
                     InvalidField, LimitViolation, LnaForgeError,
                     ModeUnsupported, NoConvergeError, ParseError,
                     UnrealizableGeometry)
from .inductors import (InductorGeometry, InductorSpec, build_library,
                        inductance_of, max_q_envelope, min_q_envelope,
                        nearest_inductor, q_of, select_drain_inductor)
from .mosmodel import DevicePoint, GmDerivatives, device_point, gm_derivatives
from .netsolver import (CascodeOutput, Metrics, PassiveSet, effective_gm,
                        evaluate, gain, iip3, input_impedance, noise_figure,
                        output_stage, s_parameters)
from .synth import (DesignCandidate, FeasibilityVerdict, SynthTarget,
                    classify, refine_passives, seed_passives, synthesize)
from .techcard import (PassiveLimits, TechnologyCard, card_hash, default_card,
                       default_card_path, load_card, save_card, serialize_card)

__version__ = "0.1.0"
