"""
Programa de superfície já analisado: cálculo, extensões, definições e o corpo
(um termo ``main`` ou uma configuração explícita).
"""

from dataclasses import dataclass, field, replace
from typing import FrozenSet, Iterable, Optional, Tuple

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import (
    Actor,
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Par,
    Restrict,
    Thread,
    flatten,
    fresh_runtime_name,
)
from src.errors import WorkbenchError
from src.lang.subst import subst_many
from src.lang.terms import Comp, Term, Value
from src.lang.types import UNIT, Type


@dataclass(frozen=True)
class Program:
    """Programa ``.mm``.

    Attributes:
        calculus: Cálculo declarado (``calculus ch|act``); ``None`` se omitido.
        extensions: Extensões declaradas.
        definitions: Definições ``def nome = V``, na ordem do arquivo.
        mailbox: Tipo da caixa de correio do ator principal (λ_act).
        result: Tipo de resultado do ator principal (modo sync).
        main: Termo principal, se o corpo for ``main``.
        config: Configuração explícita, se o corpo for ``config``.
        aliases: Apelidos de tipo já expandidos (mantidos para a impressão).
    """

    calculus: Optional[Calculus] = None
    extensions: FrozenSet[Extension] = field(default_factory=frozenset)
    definitions: Tuple[Tuple[str, Value], ...] = ()
    mailbox: Optional[Type] = None
    result: Optional[Type] = None
    main: Optional[Comp] = None
    config: Optional[ConfigTree] = None
    aliases: Tuple[Tuple[str, Type], ...] = ()

    def with_mode(self, calculus: Optional[Calculus] = None,
                  extensions: Optional[Iterable[Extension]] = None) -> "Program":
        """Cópia com cálculo/extensões sobrepostos (opções da linha de comando)."""
        changes = {}
        if calculus is not None:
            changes["calculus"] = Calculus(calculus)
        if extensions is not None:
            changes["extensions"] = frozenset(Extension(e) for e in extensions)
        return replace(self, **changes) if changes else self

    @property
    def resolved_calculus(self) -> Calculus:
        if self.calculus is not None:
            return self.calculus
        if self.config is not None:
            return Calculus.ACT if _has_actor(self.config) else Calculus.CH
        return Calculus.CH

    def inline(self, term: Term) -> Term:
        """Substitui as definições (cada uma pode usar as anteriores) em ``term``."""
        resolved = {}
        for name, value in self.definitions:
            resolved[name] = subst_many(value, resolved) if resolved else value
        return subst_many(term, resolved) if resolved else term

    def main_term(self) -> Comp:
        if self.main is None:
            raise WorkbenchError("o programa não tem termo main")
        return self.inline(self.main)

    def to_config(self) -> Configuration:
        """Configuração inicial: thread (λ_ch) ou ator ``n$0`` (λ_act) para ``main``."""
        if self.config is not None:
            return flatten(_inline_tree(self.config, self))
        body = self.main_term()
        if self.resolved_calculus is Calculus.CH:
            return Configuration((), (Thread(body),))
        name = fresh_runtime_name(())
        result = None
        if Extension.SYNC in self.extensions:
            result = self.result or UNIT
        binder = Binder(name, self.mailbox or UNIT, result)
        return Configuration((binder,), (Actor(name, body),))


def _has_actor(tree: ConfigTree) -> bool:
    if isinstance(tree, Actor):
        return True
    if isinstance(tree, Par):
        return _has_actor(tree.left) or _has_actor(tree.right)
    if isinstance(tree, Restrict):
        return _has_actor(tree.body)
    if isinstance(tree, Configuration):
        return any(isinstance(leaf, Actor) for leaf in tree.leaves)
    return False


def _inline_tree(tree: ConfigTree, program: Program) -> ConfigTree:
    if isinstance(tree, Thread):
        return Thread(program.inline(tree.term))
    if isinstance(tree, Buffer):
        return Buffer(tree.name, tuple(program.inline(v) for v in tree.values))
    if isinstance(tree, Actor):
        return Actor(tree.name, program.inline(tree.term),
                     tuple(program.inline(v) for v in tree.mailbox))
    if isinstance(tree, Par):
        return Par(_inline_tree(tree.left, program), _inline_tree(tree.right, program))
    if isinstance(tree, Restrict):
        return Restrict(tree.binder, _inline_tree(tree.body, program))
    if isinstance(tree, Configuration):
        return Configuration(tree.binders, tuple(_inline_tree(leaf, program)
                                                 for leaf in tree.leaves))
    return tree
