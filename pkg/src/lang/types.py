"""
Tipos compartilhados por λ_ch e λ_act.

Os tipos são dataclasses imutáveis. Tipos recursivos são iso-recursivos: a
igualdade é sintática a menos de renomeação dos ligantes ``mu``.
"""

from dataclasses import dataclass, fields, replace
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple

from src.errors import TypeFormationError


class Type:
    """Classe base (marcadora) de todos os construtores de tipo."""

    __slots__ = ()

    def __str__(self) -> str:
        return render_type(self)


@dataclass(frozen=True, slots=True)
class UnitType(Type):
    pass


@dataclass(frozen=True, slots=True)
class IntType(Type):
    pass


@dataclass(frozen=True, slots=True)
class StringType(Type):
    pass


@dataclass(frozen=True, slots=True)
class Effect:
    """Anotação de efeito de uma seta de λ_act.

    ``mailbox`` é o tipo da caixa de correio do ator que executa a função;
    ``result`` só é usado no modo de sincronização (par ordenado).
    """

    mailbox: Type
    result: Optional[Type] = None

    def __str__(self) -> str:
        if self.result is None:
            return render_type(self.mailbox)
        return f"{render_type(self.mailbox)}, {render_type(self.result)}"


@dataclass(frozen=True, slots=True)
class FunType(Type):
    arg: Type
    ret: Type
    eff: Optional[Effect] = None


@dataclass(frozen=True, slots=True)
class ChanRefType(Type):
    carried: Type


@dataclass(frozen=True, slots=True)
class ActorRefType(Type):
    mailbox: Type


@dataclass(frozen=True, slots=True)
class ActorRef2Type(Type):
    mailbox: Type
    result: Type


@dataclass(frozen=True, slots=True)
class ProdType(Type):
    left: Type
    right: Type


@dataclass(frozen=True, slots=True)
class SumType(Type):
    left: Type
    right: Type


@dataclass(frozen=True, slots=True)
class VariantType(Type):
    """Variante n-ária; rótulos distintos, armazenados em ordem lexicográfica."""

    labels: Tuple[Tuple[str, Type], ...]

    def __post_init__(self) -> None:
        names = [label for label, _ in self.labels]
        if len(set(names)) != len(names):
            raise TypeFormationError(f"rótulos repetidos na variante: {names}")
        ordered = tuple(sorted(self.labels, key=lambda item: item[0]))
        object.__setattr__(self, "labels", ordered)

    @classmethod
    def of(cls, mapping: Mapping[str, Type]) -> "VariantType":
        return cls(tuple(mapping.items()))

    def label_type(self, label: str) -> Optional[Type]:
        for name, t in self.labels:
            if name == label:
                return t
        return None

    @property
    def label_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.labels)


@dataclass(frozen=True, slots=True)
class MuType(Type):
    var: str
    body: Type


@dataclass(frozen=True, slots=True)
class TypeVar(Type):
    name: str


UNIT = UnitType()
INT = IntType()
STRING = StringType()
# true = inl (), false = inr ()
BOOL = SumType(UNIT, UNIT)


def children(t: Type) -> Iterator[Type]:
    """Itera sobre os subtipos imediatos de ``t`` (incluindo os de efeitos)."""
    if isinstance(t, VariantType):
        for _, sub in t.labels:
            yield sub
        return
    for f in fields(t):
        value = getattr(t, f.name)
        if isinstance(value, Type):
            yield value
        elif isinstance(value, Effect):
            yield value.mailbox
            if value.result is not None:
                yield value.result


def rebuild(t: Type, fn: Callable[[Type], Type]) -> Type:
    """Reconstrói ``t`` aplicando ``fn`` aos subtipos imediatos (mesmo construtor)."""
    if isinstance(t, VariantType):
        return VariantType(tuple((label, fn(sub)) for label, sub in t.labels))
    if isinstance(t, MuType):
        return MuType(t.var, fn(t.body))
    if isinstance(t, FunType):
        return FunType(fn(t.arg), fn(t.ret), map_effect(t.eff, fn))
    changes = {}
    for f in fields(t):
        value = getattr(t, f.name)
        if isinstance(value, Type):
            changes[f.name] = fn(value)
    return replace(t, **changes) if changes else t


def map_effect(eff: Optional[Effect], fn: Callable[[Type], Type]) -> Optional[Effect]:
    if eff is None:
        return None
    return Effect(fn(eff.mailbox), fn(eff.result) if eff.result is not None else None)


def free_type_vars(t: Type) -> FrozenSet[str]:
    if isinstance(t, TypeVar):
        return frozenset({t.name})
    if isinstance(t, MuType):
        return free_type_vars(t.body) - {t.var}
    result: FrozenSet[str] = frozenset()
    for sub in children(t):
        result |= free_type_vars(sub)
    return result


def fresh_type_var(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    if base not in taken:
        return base
    index = 1
    while f"{base}%{index}" in taken:
        index += 1
    return f"{base}%{index}"


def subst_type(t: Type, var: str, replacement: Type) -> Type:
    """Substituição de tipo que evita captura: ``t{replacement/var}``."""
    if isinstance(t, TypeVar):
        return replacement if t.name == var else t
    if isinstance(t, MuType):
        if t.var == var:
            return t
        if t.var in free_type_vars(replacement):
            fresh = fresh_type_var(t.var, free_type_vars(replacement) | free_type_vars(t.body) | {var})
            body = subst_type(t.body, t.var, TypeVar(fresh))
            return MuType(fresh, subst_type(body, var, replacement))
        return MuType(t.var, subst_type(t.body, var, replacement))
    return rebuild(t, lambda sub: subst_type(sub, var, replacement))


def unfold(t: MuType) -> Type:
    """Desdobra um tipo recursivo: ``A{µX.A/X}``."""
    return subst_type(t.body, t.var, t)


def canonical_type(t: Type, env: Optional[Dict[str, str]] = None) -> Type:
    """Renomeia ligantes ``mu`` para índices por profundidade (estilo de Bruijn)."""
    env = env or {}
    if isinstance(t, TypeVar):
        return TypeVar(env.get(t.name, t.name))
    if isinstance(t, MuType):
        level = f"@{len(env)}"
        inner = dict(env)
        inner[t.var] = level
        return MuType(level, canonical_type(t.body, inner))
    return rebuild(t, lambda sub: canonical_type(sub, env))


def canonical_effect(eff: Optional[Effect]) -> Optional[Effect]:
    return map_effect(eff, canonical_type)


def type_equal(a: Optional[Type], b: Optional[Type]) -> bool:
    if a is None or b is None:
        return a is b
    return a == b or canonical_type(a) == canonical_type(b)


def effect_equal(a: Optional[Effect], b: Optional[Effect]) -> bool:
    if a is None or b is None:
        return a is b
    return type_equal(a.mailbox, b.mailbox) and type_equal(a.result, b.result)


def type_key(t: Type) -> str:
    """Chave textual determinística, invariante por α."""
    return repr(canonical_type(t))


def list_type(elem: Type) -> MuType:
    """``List(A) ≜ µX.1 + (A × X)`` com ``X`` livre de colisão com ``A``."""
    var = fresh_type_var("L", free_type_vars(elem))
    return MuType(var, SumType(UNIT, ProdType(elem, TypeVar(var))))


def list_element(t: Type) -> Optional[Type]:
    """Devolve ``A`` se ``t`` tem a forma da codificação de ``List(A)``."""
    if not isinstance(t, MuType):
        return None
    body = t.body
    if (isinstance(body, SumType) and isinstance(body.left, UnitType)
            and isinstance(body.right, ProdType)
            and body.right.right == TypeVar(t.var)
            and t.var not in free_type_vars(body.right.left)):
        return body.right.left
    return None


def is_bool(t: Type) -> bool:
    return t == BOOL


def contains(t: Type, predicate: Callable[[Type], bool]) -> bool:
    if predicate(t):
        return True
    return any(contains(sub, predicate) for sub in children(t))


def render_type(t: Type) -> str:
    """Renderiza um tipo na sintaxe de superfície."""
    return _render(t, 0)


# Níveis de precedência: 0 seta, 1 soma, 2 produto, 3 átomo
def _render(t: Type, level: int) -> str:
    if isinstance(t, UnitType):
        return "unit"
    if isinstance(t, IntType):
        return "int"
    if isinstance(t, StringType):
        return "string"
    if t == BOOL:
        return "bool"
    if isinstance(t, TypeVar):
        return t.name
    if isinstance(t, ChanRefType):
        return f"ChanRef({_render(t.carried, 0)})"
    if isinstance(t, ActorRefType):
        return f"ActorRef({_render(t.mailbox, 0)})"
    if isinstance(t, ActorRef2Type):
        return f"ActorRef({_render(t.mailbox, 0)}, {_render(t.result, 0)})"
    if isinstance(t, VariantType):
        inner = ", ".join(f"{label}: {_render(sub, 0)}" for label, sub in t.labels)
        return f"<{inner}>"
    element = list_element(t)
    if element is not None:
        return f"List({_render(element, 0)})"
    if isinstance(t, MuType):
        text = f"mu {t.var}. {_render(t.body, 0)}"
        return f"({text})" if level > 0 else text
    if isinstance(t, FunType):
        arrow = "->" if t.eff is None else f"-[{_render_effect(t.eff)}]->"
        text = f"{_render(t.arg, 1)} {arrow} {_render(t.ret, 0)}"
        return f"({text})" if level > 0 else text
    if isinstance(t, SumType):
        text = f"{_render(t.left, 1)} + {_render(t.right, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(t, ProdType):
        text = f"{_render(t.left, 2)} * {_render(t.right, 3)}"
        return f"({text})" if level > 2 else text
    raise TypeFormationError(f"tipo desconhecido: {t!r}")


def _render_effect(eff: Effect) -> str:
    if eff.result is None:
        return _render(eff.mailbox, 0)
    return f"{_render(eff.mailbox, 0)}, {_render(eff.result, 0)}"
