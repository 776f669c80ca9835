"""
Coalescência de canais: todos os canais de um programa de λ_ch passam a carregar
um único tipo recursivo de variante, com um rótulo (token) por tipo de carga.

Depois da coalescência a tradução canais → atores, que exige um só tipo de
canal, pode ser aplicada. ``take`` passa a testar o token recebido e reduz a
``error ()`` quando ele não corresponde ao esperado.
"""

import logging
from dataclasses import dataclass, fields
from typing import Dict, Iterator, List, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import (
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Thread,
    flatten,
    leaf_terms,
)
from src.errors import TranslationError, UnsupportedConstruct, WorkbenchError
from src.lang.reduce import analyze
from src.lang.subst import NameSupply, all_vars
from src.lang.terms import (
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Choose,
    Comp,
    ErrorValue,
    Give,
    Inl,
    Inr,
    Let,
    Name,
    NewCh,
    Return,
    Roll,
    Take,
    Term,
    UnitValue,
    Unroll,
    Value,
    VariantValue,
    Var,
    map_annotations,
    map_subterms,
    subterms,
)
from src.lang.types import (
    ChanRefType,
    Effect,
    MuType,
    SumType,
    Type,
    TypeVar,
    VariantType,
    children,
    rebuild,
    render_type,
    type_key,
    unfold,
)

logger = logging.getLogger(__name__)

COALESCED_VAR = "X$c"
CHANNEL_TOKEN = "tokChan"


@dataclass(frozen=True)
class TokenEnv:
    """Atribuição de tokens aos tipos-base carregados por canais.

    ``tokens`` associa a chave (``type_key``) de cada tipo-base a ``(rótulo, tipo)``,
    na ordem dos rótulos ``tok1 … tokn``.
    """

    tokens: Tuple[Tuple[str, str, Type], ...]

    def label_for(self, carried: Type) -> str:
        if isinstance(carried, ChanRefType):
            return CHANNEL_TOKEN
        key = type_key(carried)
        for token_key, label, _ in self.tokens:
            if token_key == key:
                return label
        raise TranslationError(f"tipo carregado sem token: {carried}")

    def payload(self, carried: Type) -> Type:
        """``⌊A⌋``: referências a canal viram ``ChanRef(X)``."""
        return _floor(carried)

    def variant(self) -> VariantType:
        labels = [(label, _floor(t)) for _, label, t in self.tokens]
        labels.append((CHANNEL_TOKEN, ChanRefType(TypeVar(COALESCED_VAR))))
        return VariantType(tuple(labels))

    def coalesced_type(self) -> MuType:
        """``⌈σ⌉ = µX.⟨tok_i : ⌊A_i⌋, tokChan : ChanRef(X)⟩``."""
        return MuType(COALESCED_VAR, self.variant())

    def as_dict(self) -> Dict[str, str]:
        result = {label: render_type(t) for _, label, t in self.tokens}
        result[CHANNEL_TOKEN] = "ChanRef(…)"
        return result


def _floor(t: Type) -> Type:
    if isinstance(t, ChanRefType):
        return ChanRefType(TypeVar(COALESCED_VAR))
    return rebuild(t, _floor)


def coalesce_type(t: Type, env: TokenEnv) -> Type:
    """``⦇ChanRef(A)⦈ = ChanRef(⌈σ⌉)``; homomórfica nos demais construtores."""
    if isinstance(t, ChanRefType):
        return ChanRefType(env.coalesced_type())
    return rebuild(t, lambda sub: coalesce_type(sub, env))


# ---------------------------------------------------------------------------
# Coleta dos tipos carregados
# ---------------------------------------------------------------------------

def type_annotations(node: Term) -> Iterator[Type]:
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Type):
            # give, take e newCh guardam o tipo carregado sem o ChanRef
            yield ChanRefType(value) if f.name == "carried" else value
        elif isinstance(value, Effect):
            yield value.mailbox
            if value.result is not None:
                yield value.result
    for child in subterms(node):
        yield from type_annotations(child)


def _carried_types(t: Type, bound: Dict[str, Type], found: Dict[str, Type]) -> None:
    if isinstance(t, MuType):
        inner = dict(bound)
        inner[t.var] = t
        _carried_types(t.body, inner, found)
        return
    if isinstance(t, ChanRefType):
        carried = t.carried
        if isinstance(carried, TypeVar) and carried.name in bound:
            carried = bound[carried.name]
        if not isinstance(carried, ChanRefType) and not isinstance(carried, TypeVar):
            found.setdefault(type_key(carried), carried)
    for sub in children(t):
        _carried_types(sub, bound, found)


def token_env_for(types: List[Type]) -> TokenEnv:
    """Tokens ``tok1 … tokn`` para os tipos-base, ordenados pela chave canônica."""
    found: Dict[str, Type] = {}
    for t in types:
        _carried_types(t, {}, found)
    ordered = sorted(found.items())
    return TokenEnv(tuple((key, f"tok{i}", t) for i, (key, t) in enumerate(ordered, start=1)))


# ---------------------------------------------------------------------------
# Tradução de termos
# ---------------------------------------------------------------------------

class _Coalescer:
    def __init__(self, env: TokenEnv, supply: NameSupply):
        self.env = env
        self.supply = supply
        self.target = env.coalesced_type()
        self.unfolded = unfold(self.target)

    def ty(self, t: Type) -> Type:
        return coalesce_type(t, self.env)

    def wrap(self, value: Value, carried: Type) -> Roll:
        label = self.env.label_for(carried)
        return Roll(VariantValue(label, value, ann=self.unfolded), ann=self.target)

    def unwrap(self, received: Value, carried: Type) -> Comp:
        """``let y ⇐ unroll x in case y { ℓ_j = z → return z | outros → error () }``."""
        expected = self.env.label_for(carried)
        y = self.supply.fresh("y")
        arms = []
        for label, _ in self.unfolded.labels:
            z = self.supply.fresh("z")
            body = Return(Var(z)) if label == expected else App(ErrorValue(), UnitValue())
            arms.append(Arm(label, z, body))
        return Let(y, Unroll(received), CaseVariant(Var(y), tuple(arms)))

    def term(self, node: Term) -> Term:
        if isinstance(node, Name):
            return node
        if isinstance(node, Give):
            if node.carried is None:
                raise TranslationError("give sem tipo elaborado")
            value = self.wrap(self.term(node.value), node.carried)
            return Give(value, self.term(node.channel), carried=self.target)
        if isinstance(node, Take):
            if node.carried is None:
                raise TranslationError("take sem tipo elaborado")
            x = self.supply.fresh("x")
            return Let(x, Take(self.term(node.channel), carried=self.target),
                       self.unwrap(Var(x), node.carried))
        if isinstance(node, NewCh):
            return NewCh(self.target, origin=node.origin or node.carried)
        if isinstance(node, Choose):
            return self.choose(node)
        rebuilt = map_subterms(node, self.term)
        return map_annotations(rebuilt, self.ty)

    def choose(self, node: Choose) -> Comp:
        """``choose`` recebe mensagens coalescidas e desembrulha o lado escolhido."""
        if not isinstance(node.ann, SumType):
            raise TranslationError("choose sem tipo elaborado")
        chosen, a, b = self.supply.fresh("chosen"), self.supply.fresh("a"), self.supply.fresh("b")
        ra, rb = self.supply.fresh("r"), self.supply.fresh("r")
        result_ann = self.ty(node.ann)
        left = Let(ra, self.unwrap(Var(a), node.ann.left), Return(Inl(Var(ra), ann=result_ann)))
        right = Let(rb, self.unwrap(Var(b), node.ann.right), Return(Inr(Var(rb), ann=result_ann)))
        inner = Choose(self.term(node.left), self.term(node.right),
                       ann=SumType(self.target, self.target))
        return Let(chosen, inner, CaseSum(Var(chosen), a, left, b, right))


def coalesce_program(tree: ConfigTree,
                     extensions: Tuple[Extension, ...] = ()) -> Tuple[Configuration, TokenEnv]:
    """Coalesce todos os canais de uma configuração de λ_ch.

    Args:
        tree: Configuração de λ_ch bem tipada.
        extensions: Extensões de λ_ch ativas (``choice``).

    Returns:
        Tuple[Configuration, TokenEnv]: a configuração coalescida e a atribuição de tokens.

    Raises:
        UnsupportedConstruct: Folhas de λ_act na entrada.
    """
    c = TypeChecker(Calculus.CH, extensions).check_config(tree)
    types: List[Type] = [ChanRefType(b.type) for b in c.binders]
    avoid = set()
    for leaf in c.leaves:
        if isinstance(leaf, Thread):
            types.extend(type_annotations(leaf.term))
            avoid |= all_vars(leaf.term)
        elif isinstance(leaf, Buffer):
            for v in leaf.values:
                types.extend(type_annotations(v))
                avoid |= all_vars(v)
        else:
            raise UnsupportedConstruct(f"folha fora de λ_ch: {type(leaf).__name__}")
    env = token_env_for(types)
    worker = _Coalescer(env, NameSupply(avoid))
    try:
        binders = tuple(Binder(b.name, worker.target) for b in c.binders)
        leaves = []
        for leaf in c.leaves:
            if isinstance(leaf, Thread):
                leaves.append(Thread(worker.term(leaf.term)))
            else:
                carried = c.binder_for(leaf.name).type
                leaves.append(Buffer(leaf.name, tuple(worker.wrap(worker.term(v), carried)
                                                      for v in leaf.values)))
    except WorkbenchError:
        raise
    except Exception as e:
        raise TranslationError(f"Erro na coalescência: {e}") from e
    logger.debug("coalescência com %d tokens", len(env.tokens) + 1)
    return Configuration(binders, tuple(leaves)), env


def error_positions(tree: ConfigTree) -> Tuple[int, ...]:
    """Índices das folhas cujo foco de avaliação é ``error ()``."""
    c = flatten(tree)
    result = []
    for index, leaf in enumerate(c.leaves):
        if isinstance(leaf, Buffer):
            continue
        term = leaf_terms(leaf)[0]
        focus = analyze(term).focus
        if isinstance(focus, App) and isinstance(focus.fn, ErrorValue):
            result.append(index)
    return tuple(result)
