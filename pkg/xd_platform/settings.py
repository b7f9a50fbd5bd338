"""
Settings for the xd_platform project.

Every tolerance used by the numerical library lives here and can be
overridden from the environment or from a `.env` file at the project root.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

LOG_LEVEL = os.getenv('XD_LOG_LEVEL', 'WARNING').upper()

# -----------------------------------------------------------------------------
# Model evaluation
# -----------------------------------------------------------------------------
# queries closer than this to an open endpoint are clamped to the interior
ENDPOINT_CLAMP = float(os.getenv('XD_ENDPOINT_CLAMP', '1e-12'))

# finest central-difference step, scaled by |y| away from the origin
DIFF_STEP = float(os.getenv('XD_DIFF_STEP', '1e-6'))
RICHARDSON_LEVELS = int(os.getenv('XD_RICHARDSON_LEVELS', '4'))

# grid used for monotone-class checks and sign checks
GRID_POINTS = int(os.getenv('XD_GRID_POINTS', '512'))
CLASSIFY_POINTS = int(os.getenv('XD_CLASSIFY_POINTS', '200'))

# -----------------------------------------------------------------------------
# Root finding and quadrature
# -----------------------------------------------------------------------------
ROOT_TOL = float(os.getenv('XD_ROOT_TOL', '1e-12'))
ROOT_MAXITER = int(os.getenv('XD_ROOT_MAXITER', '200'))

QUAD_EPSABS = float(os.getenv('XD_QUAD_EPSABS', '1e-13'))
QUAD_EPSREL = float(os.getenv('XD_QUAD_EPSREL', '1e-12'))
QUAD_LIMIT = int(os.getenv('XD_QUAD_LIMIT', '200'))

# improper integrals: geometric subdivision toward the endpoint
IMPROPER_DIVERGENCE = float(os.getenv('XD_IMPROPER_DIVERGENCE', '1e12'))
IMPROPER_CAUCHY = float(os.getenv('XD_IMPROPER_CAUCHY', '1e-10'))
IMPROPER_HALVINGS = int(os.getenv('XD_IMPROPER_HALVINGS', '200'))
# geometric piece ratio above which an exhausted subdivision counts as divergent
IMPROPER_RATIO = float(os.getenv('XD_IMPROPER_RATIO', '0.99'))
IMPROPER_DOUBLINGS = int(os.getenv('XD_IMPROPER_DOUBLINGS', '200'))

# -----------------------------------------------------------------------------
# Reconstruction from a slope function
# -----------------------------------------------------------------------------
ODE_METHOD = os.getenv('XD_ODE_METHOD', 'DOP853')
ODE_RTOL = float(os.getenv('XD_ODE_RTOL', '1e-10'))
ODE_ATOL = float(os.getenv('XD_ODE_ATOL', '1e-12'))
ODE_SPAN = float(os.getenv('XD_ODE_SPAN', '1e8'))
ODE_HUGE = float(os.getenv('XD_ODE_HUGE', '1e12'))
# integrated hazard at which trajectories stop; shifts and truncations read H differences this far out
ODE_MAX_HAZARD = float(os.getenv('XD_ODE_MAX_HAZARD', '1e7'))
ODE_MIN_HAZARD = float(os.getenv('XD_ODE_MIN_HAZARD', '1e-14'))

# -----------------------------------------------------------------------------
# Transforms
# -----------------------------------------------------------------------------
POSITIVITY_GUARD = float(os.getenv('XD_POSITIVITY_GUARD', '1e-9'))

# -----------------------------------------------------------------------------
# Convergence experiments
# -----------------------------------------------------------------------------
CONVERGENCE_TOL = float(os.getenv('XD_CONVERGENCE_TOL', '1e-2'))
FIT_RESIDUAL = float(os.getenv('XD_FIT_RESIDUAL', '1e-2'))
FIT_POINTS = int(os.getenv('XD_FIT_POINTS', '64'))
# decades (log10) used to fit power asymptotics near 0 and near infinity
FIT_LOW_DECADES = tuple(float(x) for x in os.getenv('XD_FIT_LOW_DECADES', '-9,-7').split(','))
FIT_HIGH_DECADES = tuple(float(x) for x in os.getenv('XD_FIT_HIGH_DECADES', '7,9').split(','))
# a caller-supplied power must agree with the fitted one within this distance
POWER_AGREEMENT = float(os.getenv('XD_POWER_AGREEMENT', '5e-2'))
TIGHTNESS_FACTOR = float(os.getenv('XD_TIGHTNESS_FACTOR', '2.0'))
WINDOW_HALF_WIDTH = float(os.getenv('XD_WINDOW_HALF_WIDTH', '3.0'))
WINDOW_MARGIN = float(os.getenv('XD_WINDOW_MARGIN', '1e-3'))
EXP_ASYMPTOTIC_TOL = float(os.getenv('XD_EXP_ASYMPTOTIC_TOL', '0.1'))

DEFAULT_WORKERS = int(os.getenv('XD_WORKERS', '1'))
