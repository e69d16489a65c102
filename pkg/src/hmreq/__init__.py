"""HM-Req: a controlled natural language for human-monitoring requirements.

The package bundles the CNL front end (lexer, parser, validator, JSON
export/import), the verb-frame lexicon it is driven by, the Schwartz value
space with pairwise conflict scoring, a persistent project store, a CLI,
and an HTTP service backing the negotiation dashboard.
"""

from hmreq.diagnostics import Diagnostic, Severity
from hmreq.lexicon import Lexicon, LexiconError, load_lexicon, load_seed_lexicon
from hmreq.parser import parse_document
from hmreq.source import SourceDocument, Span
from hmreq.validation import validate
from hmreq.values import ValueSpace, load_value_space

__version__ = "0.1.0"

__all__ = [
    "Diagnostic",
    "Severity",
    "Lexicon",
    "LexiconError",
    "load_lexicon",
    "load_seed_lexicon",
    "parse_document",
    "SourceDocument",
    "Span",
    "validate",
    "ValueSpace",
    "load_value_space",
    "__version__",
]
