"""
AST de chamada-por-valor de grão fino compartilhada por λ_ch e λ_act.

Valores e computações são estratificados por classes base distintas
(``Value`` e ``Comp``); os campos de uma computação que exigem valores são
sempre anotados com ``Value``. Anotações de tipo em construtores de valor são
metadados: não participam da igualdade nem do ``repr``.
"""

from dataclasses import dataclass, field, fields, replace
from typing import Callable, Iterator, Optional, Tuple, Union

from src.lang.types import BOOL, Effect, Type


class Term:
    """Classe base de todos os nós da AST."""

    __slots__ = ()


class Value(Term):
    __slots__ = ()


class Comp(Term):
    __slots__ = ()


# ---------------------------------------------------------------------------
# Valores
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var(Value):
    name: str


@dataclass(frozen=True, slots=True)
class Name(Value):
    """Nome de tempo de execução (canal ou ator); ``origin`` guarda o tipo original."""

    ident: str
    origin: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Lam(Value):
    var: str
    body: Comp
    var_type: Optional[Type] = None
    eff: Optional[Effect] = None


@dataclass(frozen=True, slots=True)
class Rec(Value):
    fn: str
    var: str
    body: Comp
    var_type: Optional[Type] = None
    ret_type: Optional[Type] = None
    eff: Optional[Effect] = None


@dataclass(frozen=True, slots=True)
class UnitValue(Value):
    pass


@dataclass(frozen=True, slots=True)
class IntLit(Value):
    value: int


@dataclass(frozen=True, slots=True)
class StrLit(Value):
    value: str


@dataclass(frozen=True, slots=True)
class Pair(Value):
    left: Value
    right: Value


@dataclass(frozen=True, slots=True)
class Inl(Value):
    value: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Inr(Value):
    value: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class VariantValue(Value):
    label: str
    value: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Roll(Value):
    value: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class ErrorValue(Value):
    """Constante distinguida ``error``: aplicada, a computação fica presa."""
    pass


# ---------------------------------------------------------------------------
# Computações do núcleo funcional
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class App(Comp):
    fn: Value
    arg: Value


@dataclass(frozen=True, slots=True)
class Let(Comp):
    var: str
    bound: Comp
    body: Comp


@dataclass(frozen=True, slots=True)
class Return(Comp):
    value: Value


@dataclass(frozen=True, slots=True)
class LetPair(Comp):
    left_var: str
    right_var: str
    value: Value
    body: Comp


@dataclass(frozen=True, slots=True)
class CaseSum(Comp):
    value: Value
    left_var: str
    left: Comp
    right_var: str
    right: Comp


@dataclass(frozen=True, slots=True)
class Arm(Term):
    label: str
    var: str
    body: Comp


@dataclass(frozen=True, slots=True)
class CaseVariant(Comp):
    value: Value
    arms: Tuple[Arm, ...]

    def arm_for(self, label: str) -> Optional[Arm]:
        for arm in self.arms:
            if arm.label == label:
                return arm
        return None


@dataclass(frozen=True, slots=True)
class Unroll(Comp):
    value: Value


PRIMITIVE_ARITY = {"neg": 1, "add": 2, "gt": 2, "show": 1}


@dataclass(frozen=True, slots=True)
class Prim(Comp):
    """Primitivas inteiras: ``neg``, ``add``, ``gt`` e ``show``."""

    op: str
    args: Tuple[Value, ...]


# ---------------------------------------------------------------------------
# Primitivas de λ_ch
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Give(Comp):
    value: Value
    channel: Value
    carried: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Take(Comp):
    channel: Value
    carried: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Fork(Comp):
    body: Comp


@dataclass(frozen=True, slots=True)
class NewCh(Comp):
    carried: Type
    origin: Optional[Type] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Choose(Comp):
    left: Value
    right: Value
    ann: Optional[Type] = field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------------------
# Primitivas de λ_act
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Spawn(Comp):
    body: Comp
    mailbox: Type
    result: Optional[Type] = None


@dataclass(frozen=True, slots=True)
class Send(Comp):
    value: Value
    target: Value


@dataclass(frozen=True, slots=True)
class Receive(Comp):
    pass


@dataclass(frozen=True, slots=True)
class SelfRef(Comp):
    pass


@dataclass(frozen=True, slots=True)
class Wait(Comp):
    target: Value


@dataclass(frozen=True, slots=True)
class ReceivePattern(Term):
    """Padrão ``(<label = var> when guard) -> body`` de um receive seletivo."""

    label: str
    var: str
    guard: Comp
    body: Comp


@dataclass(frozen=True, slots=True)
class SelectiveReceive(Comp):
    patterns: Tuple[ReceivePattern, ...]
    result: Optional[Type] = field(default=None, compare=False, repr=False)


CHANNEL_PRIMITIVES = (Give, Take, Fork, NewCh, Choose)
ACTOR_PRIMITIVES = (Spawn, Send, Receive, SelfRef, Wait, SelectiveReceive)
COMMUNICATION = CHANNEL_PRIMITIVES + ACTOR_PRIMITIVES

AnyTerm = Union[Value, Comp, Arm, ReceivePattern]


def subterms(node: Term) -> Iterator[Term]:
    """Itera sobre os filhos imediatos que são nós da AST."""
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Term):
            yield value
        elif isinstance(value, tuple):
            for item in value:
                if isinstance(item, Term):
                    yield item


def map_subterms(node: Term, fn: Callable[[Term], Term]) -> Term:
    """Reconstrói ``node`` aplicando ``fn`` a cada filho imediato da AST."""
    changes = {}
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Term):
            new = fn(value)
            if new is not value:
                changes[f.name] = new
        elif isinstance(value, tuple) and value and isinstance(value[0], Term):
            new_items = tuple(fn(item) for item in value)
            if any(a is not b for a, b in zip(new_items, value)):
                changes[f.name] = new_items
    return replace(node, **changes) if changes else node


def map_annotations(node: Term, fn: Callable[[Type], Type]) -> Term:
    """Aplica ``fn`` às anotações de tipo do nó (não recursivo nos filhos)."""
    changes = {}
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Type):
            changes[f.name] = fn(value)
        elif isinstance(value, Effect):
            changes[f.name] = Effect(fn(value.mailbox),
                                     fn(value.result) if value.result is not None else None)
    return replace(node, **changes) if changes else node


def transform_types(node: Term, fn: Callable[[Type], Type]) -> Term:
    """Aplica ``fn`` a todas as anotações de tipo da árvore."""
    inner = map_subterms(node, lambda child: transform_types(child, fn))
    return map_annotations(inner, fn)


def contains_node(node: Term, predicate: Callable[[Term], bool]) -> bool:
    if predicate(node):
        return True
    return any(contains_node(child, predicate) for child in subterms(node))


def is_pure(node: Term) -> bool:
    """Pureza sintática: nenhuma construção de comunicação ou concorrência."""
    return not contains_node(node, lambda n: isinstance(n, COMMUNICATION))


def true_value() -> Inl:
    return Inl(UnitValue(), ann=BOOL)


def false_value() -> Inr:
    return Inr(UnitValue(), ann=BOOL)


def bool_of(value: Value) -> Optional[bool]:
    if isinstance(value, Inl) and isinstance(value.value, UnitValue):
        return True
    if isinstance(value, Inr) and isinstance(value.value, UnitValue):
        return False
    return None
