"""Three-valued certificates for statements checked on finitely many windows."""

from dataclasses import dataclass, field

HOLDS = "holds_to_depth"
FAILS = "fails_at_depth"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    property: str
    value: str
    depth: int = 0
    witness: object = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.value not in (HOLDS, FAILS, INCONCLUSIVE):
            raise ValueError("bad verdict value %r" % self.value)
        if self.value == FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @classmethod
    def holds(cls, prop, depth, evidence=None):
        return cls(prop, HOLDS, depth, None, dict(evidence or {}))

    @classmethod
    def fails(cls, prop, depth, witness, evidence=None):
        return cls(prop, FAILS, depth, witness, dict(evidence or {}))

    @classmethod
    def inconclusive(cls, prop, depth=0, evidence=None):
        return cls(prop, INCONCLUSIVE, depth, None, dict(evidence or {}))

    @property
    def ok(self):
        return self.value == HOLDS

    @property
    def failed(self):
        return self.value == FAILS

    def renamed(self, prop):
        return Verdict(prop, self.value, self.depth, self.witness, self.evidence)

    def __str__(self):
        return "%s: %s(%d)" % (self.property, self.value, self.depth)
