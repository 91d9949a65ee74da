###################################################################################################
# Root System Settings
###################################################################################################

# Reflection rounds per n^2 allowed before a closure is declared not of finite type
ROOT_CLOSURE_ROUNDS_FACTOR: int = 10

# Upper bound on the Coxeter number search (largest finite case in scope is E8 with h = 30)
COXETER_ORDER_LIMIT: int = 200

###################################################################################################
# Search Settings
###################################################################################################

# Extra crossings allowed on top of 2 * height(alpha) when no budget is given
SEARCH_BUDGET_SLACK: int = 0

# Hard cap on explored search nodes per (permutation, root) call (0 disables the cap)
SEARCH_MAX_NODES: int = 2_000_000

###################################################################################################
# Campaign Settings
###################################################################################################

# Largest |P_Q| verified exhaustively; bigger sets are sampled
PQ_CAP: int = 5040

# Sample size used when |P_Q| exceeds PQ_CAP
PQ_SAMPLE: int = 100

# Largest commutation class explored during Coxeter descent
COMMUTATION_CAP: int = 64

# Default seed for sampling and fuzz suites
DEFAULT_SEED: int = 20240229

###################################################################################################
# General System Settings
###################################################################################################

# If true, campaigns print SYSTEM STATUS progress lines to the console
PRINT_CAMPAIGN_STATUS: bool = True

# If true, descent prints the failure trace of roots it could not realize
PRINT_DESCENT_FAILURES: bool = False
