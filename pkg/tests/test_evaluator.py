import random

from hypothesis import given, settings
from hypothesis import strategies as st

from forno.evaluator import RULES, eval_snapshot, evaluate
from forno.generators import GenConfig, random_raw_term, random_state, random_valid_term
from forno.state import MachineState, reverse, state
from forno.syntax import For, If, Normal, Pop, Push, Rof, Seq, Skip, parse, walk
from forno.validity import is_valid, written_registers

from reference import ref_eval
from strategies import regs, runnable_terms, self_feeding, states


def test_pop_examples():
    assert evaluate(Pop(0, "x"), state(x=[0, 1])).final == state(x=[1])
    assert evaluate(Pop(0, "x"), state(x=[1])).final == state(counter=1, x=[1])


def test_for_on_empty_guard_is_identity():
    w = state(y=[3], z=[1, 2])
    assert evaluate(For("x", (Push(7, "y"),)), w).final == w


def test_for_dispatch_uses_min_index():
    # snapshot [5, 0]: 5 runs body min(5, 1) = 1, then 0 runs body 0
    t = For("x", (Push(0, "y"), Push(1, "y")))
    assert evaluate(t, state(x=[5, 0])).final == state(x=[5, 0], y=[0, 1])


def test_rof_walks_reversed_snapshot():
    t = Rof("x", (Push(0, "y"), Push(1, "y")))
    assert evaluate(t, state(x=[5, 0])).final == state(x=[5, 0], y=[1, 0])


def test_eval_snapshot():
    w = state(q=[4])
    assert eval_snapshot((), (Push(1, "p"),), w) == w
    assert eval_snapshot((0,), (Skip(),), w) == w
    assert eval_snapshot((1, 1, 1), (Skip(), Push(1, "p")), w) == state(q=[4], p=[1, 1, 1])


def test_for_takes_snapshot_at_entry():
    # the body grows the guard; iterations still follow the entry value
    t = For("x", (Push(0, "x"),))
    assert evaluate(t, state(x=[0, 0])).final == state(x=[0, 0, 0, 0])


def test_if_ignores_counter():
    t = If("x", 1, Push(2, "y"))
    assert evaluate(t, state(counter=3, x=[1])).final == state(counter=2, x=[1])
    assert evaluate(t, state(x=[2])).final == state(x=[2])
    assert evaluate(t, state()).final == state()


def test_step_counting():
    assert evaluate(Skip()).steps == 1
    t = parse("NORMAL x {FOR x {PUSH[1] y}}; IF y = 1 {SKIP}")
    # 2 loop steps + 2 pushes + if + skip
    assert evaluate(t, state(x=[0, 0])).steps == 6


def test_trace():
    t = parse("NORMAL x {FOR x {PUSH[1] y}}; POP[0] y")
    res = evaluate(t, state(x=[3]), trace=True)
    rules = [e.rule for e in res.trace]
    assert rules == ["seq", "n", "for", "step", "push", "base", "pop"]
    assert all(r in RULES for r in rules)
    last = res.trace[-1]
    assert (last.register, last.stack, last.counter) == ("y", (1,), 1)
    assert str(last).split("\t") == ["pop", f"{last.span}", "y=[1]", "counter=1"]
    assert evaluate(t, state(x=[3])).final == res.final


def test_deep_terms_do_not_recurse():
    t = Skip()
    for _ in range(200_000):
        t = Seq(Push(1, "x"), t)
    res = evaluate(t)
    assert len(res.final["x"]) == 200_000
    nested = Push(1, "y")
    for _ in range(50_000):
        nested = If("x", 1, nested)
    assert evaluate(nested, state(x=[1])).final == state(x=[1], y=[1])


@settings(max_examples=500)
@given(runnable_terms, states)
def test_agrees_with_reference(t, w):
    assert evaluate(t, w).final == ref_eval(t, w)


@given(runnable_terms, states, st.lists(regs, min_size=1, max_size=3))
def test_normal_is_transparent(t, w, normals):
    assert evaluate(Normal(tuple(normals), t), w).final == evaluate(t, w).final


@given(runnable_terms, runnable_terms, runnable_terms, states)
def test_seq_associative(a, b, c, w):
    assert evaluate(Seq(a, Seq(b, c)), w).final == evaluate(Seq(Seq(a, b), c), w).final


@given(st.lists(runnable_terms, min_size=1, max_size=3), regs, states)
def test_rof_is_for_on_reversed_snapshot(bodies, x, w):
    assert evaluate(Rof(x, tuple(bodies)), w).final == eval_snapshot(reverse(w[x]), bodies, w)


def _tame_raw_terms(rng, cfg, count):
    done = 0
    while done < count:
        t = random_raw_term(rng, cfg)
        if not self_feeding(t):
            done += 1
            yield t


def test_totality_and_determinism():
    rng = random.Random(7)
    cfg = GenConfig(max_depth=5)
    for t in _tame_raw_terms(rng, cfg, 10_000):
        w = random_state(rng, cfg)
        a = evaluate(t, w)
        if rng.random() < 0.05:
            assert evaluate(t, w) == a


def test_guards_stable_on_valid_terms():
    # every guarded body leaves its guard register untouched
    rng = random.Random(11)
    for _ in range(300):
        t = random_valid_term(rng)
        w = random_state(rng)
        for node in walk(t):
            bodies = ()
            if isinstance(node, If):
                bodies = (node.body,)
            elif isinstance(node, (For, Rof)):
                bodies = node.bodies
            for b in bodies:
                assert evaluate(b, w).final[node.guard] == w[node.guard]
        assert is_valid(t)


def test_faulted_states_never_change_stacks():
    rng = random.Random(3)
    # stacks move only on a push or pop that sees counter 0 before and after
    for t in _tame_raw_terms(rng, GenConfig(), 300):
        w = random_state(rng, faulted=True)
        res = evaluate(t, w, trace=True)
        prev = w.counter
        store = dict(w.store)
        for ev in res.trace:
            if ev.rule in ("push", "pop"):
                if prev >= 1 and ev.counter >= 1:
                    assert ev.stack == store.get(ev.register, ())
                store[ev.register] = ev.stack
                prev = ev.counter
