"""
Agrupa a semântica de um cálculo (passo, classificação, tipagem) para a bancada.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Mapping, Optional, Tuple

from src.calculi.actors import classify_progress_act, step_config_act
from src.calculi.channels import classify_progress_ch, step_config_ch
from src.calculi.checker import Calculus, Extension, TypeChecker, TypeEnv
from src.calculi.configuration import ConfigTree, Configuration, config_key, normalize_config
from src.calculi.steps import LeafProgress, Transition
from src.lang.types import Type


@dataclass(frozen=True)
class Semantics:
    """Cálculo com extensões fixadas; todas as operações são puras."""

    calculus: Calculus
    extensions: FrozenSet[Extension] = field(default_factory=frozenset)
    guard_fuel: Optional[int] = None

    @property
    def gc(self) -> bool:
        return Extension.SYNC in self.extensions

    def step(self, c: ConfigTree) -> Tuple[Transition, ...]:
        if self.calculus is Calculus.CH:
            return step_config_ch(c, self.extensions)
        return step_config_act(c, self.extensions, self.guard_fuel)

    def classify(self, c: ConfigTree) -> Tuple[LeafProgress, ...]:
        if self.calculus is Calculus.CH:
            return classify_progress_ch(c, self.extensions)
        return classify_progress_act(c, self.extensions, self.guard_fuel)

    def normalize(self, c: ConfigTree) -> Configuration:
        return normalize_config(c, gc=self.gc)

    def key(self, c: ConfigTree) -> Tuple:
        return config_key(c, gc=self.gc)

    def typecheck(self, c: ConfigTree, env: Optional[TypeEnv] = None,
                  delta: Optional[Mapping[str, Type]] = None,
                  strict: bool = False) -> Configuration:
        return TypeChecker(self.calculus, self.extensions, strict).check_config(c, env, delta)


def semantics_for(calculus: Calculus, extensions: Iterable[Extension] = (),
                  guard_fuel: Optional[int] = None) -> Semantics:
    return Semantics(Calculus(calculus), frozenset(Extension(e) for e in extensions), guard_fuel)
