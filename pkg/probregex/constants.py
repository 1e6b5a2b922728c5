"""Constants used throughout probregex."""

TOOLKIT_NAME = "probregex"

# Exit codes of the command-line surface
EXIT_DIFFER = 1
EXIT_PARSE_ERROR = 2
EXIT_ALPHABET_ERROR = 3
EXIT_UNKNOWN_STATE = 3
EXIT_INVARIANT_ERROR = 4

# Verdict and report wording printed on stdout
EQUAL_TEXT = "EQUAL"
ROUNDTRIP_OK_TEXT = "ROUNDTRIP OK"
LANG_EQUAL_NOT_BISIMILAR_TEXT = "LANG-EQUAL BUT NOT BISIMILAR"

# Symbol used for successful termination in DOT output
TERMINATION_SYMBOL = "✓"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
