"""
Analisador da sintaxe de superfície (.mm) construído com lark.

A gramática está em ``grammar.lark``. O resultado passa por três etapas:
expansão dos apelidos de tipo, remoção do açúcar sintático e, nas
configurações explícitas, conversão das variáveis ligadas por ``nu`` em nomes.
"""

import ast
import logging
from dataclasses import replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from src.calculi.checker import Calculus, Extension
from src.calculi.configuration import Actor, Binder, Buffer, ConfigTree, Par, Restrict, Thread
from src.errors import ParseError, WorkbenchError
from src.harness.program import Program
from src.lang.desugar import BoolLit, CaseList, If, LetValue, ListCons, ListNil, Seq, desugar
from src.lang.subst import subst_many
from src.lang.terms import (
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Choose,
    ErrorValue,
    Fork,
    Give,
    Inl,
    Inr,
    IntLit,
    Lam,
    Let,
    LetPair,
    Name,
    NewCh,
    Pair,
    Prim,
    Rec,
    Receive,
    ReceivePattern,
    Return,
    Roll,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    StrLit,
    Take,
    Term,
    UnitValue,
    Unroll,
    VariantValue,
    Var,
    Wait,
    transform_types,
    true_value,
)
from src.lang.types import (
    BOOL,
    INT,
    STRING,
    UNIT,
    ActorRef2Type,
    ActorRefType,
    ChanRefType,
    Effect,
    FunType,
    MuType,
    ProdType,
    SumType,
    Type,
    TypeVar,
    VariantType,
    free_type_vars,
    list_type,
    subst_type,
)

logger = logging.getLogger(__name__)

GRAMMAR_PATH = Path(__file__).parent / "grammar.lark"


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR_PATH.read_text(encoding="utf-8"), parser="earley", lexer="basic",
                propagate_positions=False, maybe_placeholders=True)


# Marcadores intermediários produzidos pelo transformador
class _Decl:
    def __init__(self, kind: str, *payload):
        self.kind = kind
        self.payload = payload


class _Body:
    def __init__(self, main=None, config=None):
        self.main = main
        self.config = config


class _Arrow:
    def __init__(self, eff: Optional[Effect]):
        self.eff = eff


@v_args(inline=True)
class _ToAst(Transformer):
    """Árvore do lark → AST de superfície (tipos ainda com apelidos)."""

    # -- programa --------------------------------------------------------------

    def start(self, *items):
        return list(items)

    def calculus_decl(self, name):
        return _Decl("calculus", str(name))

    def extensions_decl(self, *names):
        return _Decl("extensions", [str(n) for n in names])

    def mailbox_decl(self, t):
        return _Decl("mailbox", t)

    def result_decl(self, t):
        return _Decl("result", t)

    def type_decl(self, name, t):
        return _Decl("type", str(name), t)

    def def_decl(self, name, value):
        return _Decl("def", str(name), value)

    def main_body(self, comp):
        return _Body(main=comp)

    def config_body(self, config):
        return _Body(config=config)

    # -- tipos ---------------------------------------------------------------

    def fun_type(self, arg, ret):
        return FunType(arg, ret)

    def eff_fun_type(self, arg, eff, ret):
        return FunType(arg, ret, eff)

    def mu_type(self, var, body):
        return MuType(str(var), body)

    def effect(self, mailbox, result):
        return Effect(mailbox, result)

    def sum_type(self, left, right):
        return SumType(left, right)

    def prod_type(self, left, right):
        return ProdType(left, right)

    def unit_type(self):
        return UNIT

    def int_type(self):
        return INT

    def string_type(self):
        return STRING

    def bool_type(self):
        return BOOL

    def chan_type(self, t):
        return ChanRefType(t)

    def actor_type(self, t):
        return ActorRefType(t)

    def actor2_type(self, t, r):
        return ActorRef2Type(t, r)

    def list_of_type(self, t):
        return list_type(t)

    def variant_type(self, *labels):
        return VariantType(tuple(label for label in labels if label is not None))

    def label_type(self, label, t):
        return (str(label), t)

    def named_type(self, name):
        return TypeVar(str(name))

    # -- valores -------------------------------------------------------------

    def plain_arrow(self):
        return _Arrow(None)

    def effect_arrow(self, eff):
        return _Arrow(eff)

    def lam(self, var, var_type, arrow, body):
        return Lam(str(var), body, var_type, arrow.eff)

    def rec(self, fn, var, var_type, ret_type, arrow, body):
        return Rec(str(fn), str(var), body, var_type, ret_type, arrow.eff)

    def cons(self, head, tail):
        return ListCons(head, tail)

    def inl(self, v):
        return Inl(v)

    def inr(self, v):
        return Inr(v)

    def roll(self, v):
        return Roll(v)

    def var(self, name):
        return Var(str(name))

    def int_lit(self, token):
        return IntLit(int(token))

    def str_lit(self, token):
        return StrLit(ast.literal_eval(str(token)))

    def true_lit(self):
        return BoolLit(True)

    def false_lit(self):
        return BoolLit(False)

    def error_value(self):
        return ErrorValue()

    def unit_value(self):
        return UnitValue()

    def pair(self, left, right):
        return Pair(left, right)

    def annotated(self, value, t):
        return _annotate(value, t)

    def variant_value(self, label, value):
        return VariantValue(str(label), value)

    def nil_value(self):
        return ListNil()

    def list_value(self, *items):
        result = ListNil()
        for item in reversed(items):
            result = ListCons(item, result)
        return result

    # -- computações ---------------------------------------------------------

    def let_comp(self, var, bound, body):
        return Let(str(var), bound, body)

    def let_value(self, var, var_type, value, body):
        return LetValue(str(var), value, body, var_type)

    def let_pair(self, left, right, value, body):
        return LetPair(str(left), str(right), value, body)

    def if_comp(self, cond, then, otherwise):
        return If(cond, then, otherwise)

    def seq(self, first, second):
        return Seq(first, second)

    def return_comp(self, value):
        return Return(value)

    def app(self, fn, arg):
        return App(fn, arg)

    def case_comp(self, value, arms):
        return arms(value)

    def sum_arms(self, left_var, left, right_var, right):
        return lambda v: CaseSum(v, str(left_var), left, str(right_var), right)

    def variant_arms(self, *arms):
        return lambda v: CaseVariant(v, tuple(arms))

    def variant_arm(self, label, var, body):
        return Arm(str(label), str(var), body)

    def list_arms(self, nil_body, head, tail, cons_body):
        return lambda v: CaseList(v, nil_body, str(head), str(tail), cons_body)

    def unroll(self, v):
        return Unroll(v)

    def prim_neg(self, v):
        return Prim("neg", (v,))

    def prim_add(self, a, b):
        return Prim("add", (a, b))

    def prim_gt(self, a, b):
        return Prim("gt", (a, b))

    def prim_show(self, v):
        return Prim("show", (v,))

    def give(self, value, channel):
        return Give(value, channel)

    def take(self, channel):
        return Take(channel)

    def fork(self, body):
        return Fork(body)

    def new_ch(self, t):
        return NewCh(t)

    def choose(self, left, right):
        return Choose(left, right)

    def spawn(self, mailbox, result, body):
        return Spawn(body, mailbox, result)

    def send(self, value, target):
        return Send(value, target)

    def receive(self):
        return Receive()

    def selective_receive(self, *patterns):
        return SelectiveReceive(tuple(patterns))

    def pattern(self, label, var, guard, body):
        return ReceivePattern(str(label), str(var), guard or Return(true_value()), body)

    def self_ref(self):
        return SelfRef()

    def wait(self, target):
        return Wait(target)

    # -- configurações -------------------------------------------------------

    def par_config(self, left, right):
        return Par(left, right)

    def restrict(self, name, t, result, body):
        return Restrict(Binder(str(name), t, result), body)

    def thread_leaf(self, comp):
        return Thread(comp)

    def buffer_leaf(self, name, values):
        return Buffer(str(name), values)

    def actor_leaf(self, name, comp, values):
        return Actor(str(name), comp, values)

    def values(self, *items):
        return tuple(item for item in items if item is not None)


def _annotate(value: Term, t: Type) -> Term:
    """Aplica ``(V : T)`` ao construtor que aceita anotação."""
    if isinstance(value, ListCons):
        # a anotação de lista vale para toda a espinha
        return ListCons(value.head, _annotate(value.tail, t), ann=t)
    if isinstance(value, (Inl, Inr, VariantValue, Roll, ListNil)):
        return replace(value, ann=t)
    if isinstance(value, Lam) and isinstance(t, FunType):
        return Lam(value.var, value.body, value.var_type or t.arg, value.eff or t.eff)
    logger.debug("anotação ignorada em %s", type(value).__name__)
    return value


# ---------------------------------------------------------------------------
# Pós-processamento
# ---------------------------------------------------------------------------

class _AliasResolver:
    def __init__(self) -> None:
        self.aliases: List[Tuple[str, Type]] = []

    def add(self, name: str, t: Type) -> None:
        self.aliases.append((name, self.resolve(t)))

    def resolve(self, t: Type) -> Type:
        for name, target in reversed(self.aliases):
            if name in free_type_vars(t):
                t = subst_type(t, name, target)
        unknown = free_type_vars(t)
        if unknown:
            raise ParseError(f"tipo desconhecido: {', '.join(sorted(unknown))}")
        return t

    def term(self, node: Term) -> Term:
        return transform_types(node, self.resolve)


def _bind_names(tree: ConfigTree, bound: Dict[str, Name]) -> ConfigTree:
    def close(term: Term) -> Term:
        return subst_many(term, bound) if bound else term

    if isinstance(tree, Restrict):
        inner = dict(bound)
        inner[tree.binder.name] = Name(tree.binder.name)
        return Restrict(tree.binder, _bind_names(tree.body, inner))
    if isinstance(tree, Par):
        return Par(_bind_names(tree.left, bound), _bind_names(tree.right, bound))
    if isinstance(tree, Thread):
        return Thread(close(tree.term))
    if isinstance(tree, Buffer):
        return Buffer(tree.name, tuple(close(v) for v in tree.values))
    if isinstance(tree, Actor):
        return Actor(tree.name, close(tree.term), tuple(close(v) for v in tree.mailbox))
    return tree


def _map_config(tree: ConfigTree, fn, types) -> ConfigTree:
    if isinstance(tree, Restrict):
        b = tree.binder
        binder = Binder(b.name, types(b.type), types(b.result) if b.result is not None else None)
        return Restrict(binder, _map_config(tree.body, fn, types))
    if isinstance(tree, Par):
        return Par(_map_config(tree.left, fn, types), _map_config(tree.right, fn, types))
    if isinstance(tree, Thread):
        return Thread(fn(tree.term))
    if isinstance(tree, Buffer):
        return Buffer(tree.name, tuple(fn(v) for v in tree.values))
    if isinstance(tree, Actor):
        return Actor(tree.name, fn(tree.term), tuple(fn(v) for v in tree.mailbox))
    return tree


def _build(items: list) -> Program:
    resolver = _AliasResolver()
    calculus: Optional[Calculus] = None
    extensions: Set[Extension] = set()
    definitions: List[Tuple[str, Term]] = []
    mailbox = result = None
    body: Optional[_Body] = None

    def core(term: Term) -> Term:
        return desugar(resolver.term(term))

    for item in items:
        if isinstance(item, _Body):
            body = item
            continue
        kind, payload = item.kind, item.payload
        if kind == "calculus":
            try:
                calculus = Calculus(payload[0])
            except ValueError as e:
                raise ParseError(f"cálculo desconhecido: {payload[0]}") from e
        elif kind == "extensions":
            for name in payload[0]:
                try:
                    extensions.add(Extension(name))
                except ValueError as e:
                    raise ParseError(f"extensão desconhecida: {name}") from e
        elif kind == "mailbox":
            mailbox = resolver.resolve(payload[0])
        elif kind == "result":
            result = resolver.resolve(payload[0])
        elif kind == "type":
            resolver.add(payload[0], payload[1])
        elif kind == "def":
            definitions.append((payload[0], core(payload[1])))

    if body is None:
        raise ParseError("programa sem corpo (main ou config)")
    config = None
    main = None
    if body.config is not None:
        config = _bind_names(_map_config(body.config, core, resolver.resolve), {})
    else:
        main = core(body.main)
    return Program(calculus=calculus, extensions=frozenset(extensions),
                   definitions=tuple(definitions), mailbox=mailbox, result=result,
                   main=main, config=config, aliases=tuple(resolver.aliases))


def parse_program(text: str) -> Program:
    """Analisa o texto de um programa ``.mm``.

    Args:
        text: Conteúdo do arquivo.

    Returns:
        Program: programa com termos do núcleo (sem açúcar) e apelidos expandidos.

    Raises:
        ParseError: Erro de sintaxe (com linha, coluna e tokens esperados) ou
            declaração inválida.
    """
    try:
        tree = _parser().parse(text)
        items = _ToAst().transform(tree)
    except UnexpectedCharacters as e:
        raise ParseError("caractere inesperado", e.line, e.column, e.allowed) from e
    except UnexpectedToken as e:
        raise ParseError(f"token inesperado {e.token!r}", e.line, e.column, e.expected) from e
    except UnexpectedEOF as e:
        raise ParseError("fim de arquivo inesperado", None, None, e.expected) from e
    except UnexpectedInput as e:
        raise ParseError(f"entrada inesperada: {e}", getattr(e, "line", None),
                         getattr(e, "column", None)) from e
    except VisitError as e:
        if isinstance(e.orig_exc, WorkbenchError):
            raise e.orig_exc
        raise ParseError(f"Erro ao construir a AST: {e.orig_exc}") from e
    try:
        return _build(items)
    except WorkbenchError:
        raise
    except Exception as e:
        raise ParseError(f"Erro ao processar o programa: {e}") from e


def parse_file(path: Path) -> Program:
    logger.debug("analisando %s", path)
    return parse_program(Path(path).read_text(encoding="utf-8"))


def parse_comp(text: str) -> Term:
    """Analisa apenas uma computação (atalho para testes e para a CLI)."""
    return parse_program(f"main {text}").main


def parse_type(text: str) -> Type:
    return parse_program(f"mailbox {text}\nmain return ()").mailbox
