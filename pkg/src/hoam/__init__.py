"""Higher-order automorphic forms: exact group algebra, explicit forms and checks."""

__version__ = "0.1.0"
SCHEMA = "hoam/1"
