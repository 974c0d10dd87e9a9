"""Exception hierarchy.  Every engine error derives from :class:`EngineError`."""


class EngineError(Exception):
    pass


class SmithThomViolation(EngineError):
    """A profile claims more real Betti numbers than complex ones."""


class FactContradiction(EngineError):
    def __init__(self, fact: str, old: str, old_provenance, new: str, new_provenance):
        self.fact = fact
        self.old = old
        self.new = new
        self.old_provenance = old_provenance
        self.new_provenance = new_provenance
        super().__init__(
            f"{fact}: recorded {old} [{old_provenance}] contradicts {new} [{new_provenance}]"
        )


class ProfileError(EngineError):
    """A profile violates a structural invariant."""


class HarnackViolation(EngineError):
    pass


class RuleNotApplicable(EngineError):
    def __init__(self, rule_id: str, missing: str):
        self.rule_id = rule_id
        self.missing = missing
        super().__init__(f"{rule_id}: precondition not met: {missing}")


class NotCoprime(RuleNotApplicable):
    pass


class AssumptionError(EngineError):
    """Raised in strict mode for side conditions the engine cannot verify."""


class CertificateCycle(EngineError):
    pass


class UnknownName(EngineError):
    pass


class DuplicateName(EngineError):
    pass


class TruncationError(EngineError):
    """A series coefficient beyond the configured truncation order was requested."""


class ScriptSyntaxError(EngineError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")
