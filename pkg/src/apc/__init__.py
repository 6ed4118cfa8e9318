"""Access permission contracts: regular expressions over property-access paths.

The pieces, bottom up:

- :mod:`apc.regex` and :mod:`apc.literals`: property literals and their languages
- :mod:`apc.contract` and :mod:`apc.syntax`: interned contracts, derivatives, parsing
- :mod:`apc.containment`: containment, reduction and permission checks
- :mod:`apc.trie`: persistent access-path tries
- :mod:`apc.interp` and :mod:`apc.report`: the λ_J interpreter with contract membranes
"""

from .containment import decide_containment, is_readable, is_writeable, reduce
from .contract import Contract, derive_path, derive_prop
from .interp import ContractViolation, Interpreter, run_source
from .report import run_program
from .syntax import ContractSyntaxError, parse_contract, pretty
from .trie import PathTrie

__all__ = [
    "Contract",
    "ContractSyntaxError",
    "ContractViolation",
    "Interpreter",
    "PathTrie",
    "decide_containment",
    "derive_path",
    "derive_prop",
    "is_readable",
    "is_writeable",
    "parse_contract",
    "pretty",
    "reduce",
    "run_program",
    "run_source",
]

__version__ = "0.1.0"
