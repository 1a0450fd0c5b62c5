import random

import pytest

from forno.compiler import (Roles, compile_tm, empty_macro, polynomial_term, pow_term,
                            remove_blanks_term, simulate_term, simulates, simulates_cleanly,
                            simulating_state, to_macro, transition_l, transition_r)
from forno.evaluator import evaluate
from forno.fixtures import FIXTURES, load_fixture
from forno.state import MachineState, state
from forno.syntax import For, Normal, Push, Rof, registers, walk
from forno.turing import (Configuration, Poly, initial_configuration, reachable_configurations,
                          tm_run, tm_step)
from forno.validity import check, written_registers

R = Roles()


def run(t, w):
    return evaluate(t, w).final


def test_roles_distinct():
    with pytest.raises(ValueError):
        Roles(g="t")


def test_pow():
    assert run(pow_term(1, "x", "y"), state(x=[0, 2, 1])) == state(x=[0, 2, 1], y=[1, 1, 1])
    assert run(pow_term(3, "x", "y"), state()) == state()
    assert run(pow_term(2, "x", "y"), state(x=[0, 0]))["y"] == (1,) * 4
    with pytest.raises(ValueError):
        pow_term(0, "x", "y")
    with pytest.raises(ValueError):
        pow_term(1, "x", "x")


@pytest.mark.parametrize("poly, length, expected", [
    (Poly(1, 1, 0), 5, 5), (Poly(2, 1, 3), 0, 3), (Poly(1, 2, 0), 3, 9), (Poly(2, 2, 1), 2, 9)])
def test_polynomial(poly, length, expected):
    out = run(polynomial_term(poly, "x", "p"), state(x=[0] * length))
    assert out["p"] == (1,) * expected
    assert out["x"] == (0,) * length


def test_empty_macro():
    t = empty_macro("x", "e", range(3))
    assert run(t, state()) == state(e=[0])
    assert run(t, state(x=[2])) == state(x=[2], e=[1])
    twice = run(t, run(t, state(x=[1])))
    assert twice["e"] == (1, 1)
    assert run(t, run(empty_macro("y", "e", range(3)), state(x=[1])))["e"] == (1, 0)


def test_to_macro():
    t = to_macro("x", "y", range(3), "t", "v")
    assert run(t, state(x=[2, 0])) == state(x=[0], y=[2], v=[1])
    assert run(t, state(y=[5])) == state(y=[5], v=[0])
    rng = random.Random(2)
    for _ in range(100):
        x = [rng.randrange(3) for _ in range(rng.randint(0, 4))]
        y = [rng.randrange(3) for _ in range(rng.randint(0, 4))]
        out = run(t, state(x=x, y=y))
        assert out.sound and out["t"] == ()
        if x:
            assert out["x"] == tuple(x[1:]) and out["y"] == (x[0], *y)
        else:
            assert out["x"] == () and out["y"] == tuple(y)


def test_to_macro_distinct_registers():
    with pytest.raises(ValueError):
        to_macro("x", "y", range(2), "x", "v")


def test_transition_r_keeps_remainder():
    enc = load_fixture("swap").encoding
    w = state(rgt=[0, 1], q=[0])
    out = run(transition_r(1, 1, R, enc), w)
    assert out["lft"] == (1,) and out["rgt"] == (1,) and out["g"] == (0,)
    assert out["q"] == (1, 0) and out["t"] == ()


def test_transition_r_materializes_blank():
    enc = load_fixture("swap").encoding
    out = run(transition_r(1, 1, R, enc), state(rgt=[0], q=[0]))
    assert out["lft"] == (1,) and out["rgt"] == (enc.blank_code,)


def test_transition_l_at_leftmost_cell():
    enc = load_fixture("swap").encoding
    out = run(transition_l(3, 4, R, enc), state(rgt=[0, 1], q=[0]))
    assert out["rgt"] == (4, 1) and out["lft"] == () and out["q"][0] == 3


def test_transition_l_moves_back():
    enc = load_fixture("swap").encoding
    out = run(transition_l(3, 4, R, enc), state(rgt=[0], lft=[1, 0], q=[0]))
    assert out["rgt"] == (1, 4) and out["lft"] == (0,)


def test_simulate_has_no_loops_and_leaves_p_alone():
    for name in FIXTURES:
        m = load_fixture(name)
        s = simulate_term(m, R, m.encoding)
        assert not any(isinstance(n, (For, Rof, Normal)) for n in walk(s))
        assert R.p not in written_registers(s) and R.p not in registers(s)


def test_simulate_term_matches_tm_step():
    rng = random.Random(4)
    for name in FIXTURES:
        m = load_fixture(name)
        enc = m.encoding
        sim = simulate_term(m, R, enc)
        words = [format(i, f"0{n}b") if n else "" for n in range(5) for i in range(2 ** n)]
        for c in reachable_configurations(m, words):
            blanks = rng.randint(0, 2) if c.right else rng.randint(1, 2)
            sigma = simulating_state(c, enc, R, blanks, q_history=[rng.randrange(len(m.states))])
            out = run(sim, sigma)
            target = c if c.state == m.halt else tm_step(m, c)
            assert simulates(out, target, enc, R), (name, c)
            assert out[R.t] == ()
            if c.state == m.halt:
                assert out[R.lft] == sigma[R.lft] and out[R.rgt] == sigma[R.rgt]


def test_iterated_simulate_reaches_halt():
    m = load_fixture("reverse")
    enc = m.encoding
    body = simulate_term(m, R, enc)
    c = Configuration("", m.initial, "011")
    steps = 0
    cur = c
    while cur.state != m.halt:
        cur = tm_step(m, cur)
        steps += 1
    for guard in ([1] * steps, [1] * (steps + 5), [random.Random(1).randrange(9) for _ in range(steps)]):
        sigma = simulating_state(c, enc, R).bind(R.p, guard)
        out = run(Normal((R.p,), For(R.p, (body,))), sigma)
        assert simulates(out, cur, enc, R)


def test_remove_blanks():
    enc = load_fixture("swap").encoding
    t = remove_blanks_term(R, enc)
    b = enc.blank_code
    out = run(t, state(rgt=[0, 1, b, b]))
    assert out["rgt"] == (0, 1) and out["g1"] == (0, 1, b, b)
    assert run(t, state()) == state()
    assert run(t, state(rgt=[1, 3, 0]))["rgt"] == (1, 0)


def test_simulates_relation():
    m = load_fixture("swap")
    enc = m.encoding
    cp = compile_tm(m)
    w = run(Push(enc.state_code(m.initial), R.q), cp.initial_state("01"))
    c = initial_configuration(m, "01")
    assert simulates_cleanly(w, c, enc)
    assert not simulates(w.with_counter(1), c, enc)
    padded = w.bind(R.rgt, w[R.rgt] + (enc.blank_code,))
    assert simulates(padded, c, enc) and not simulates_cleanly(padded, c, enc)
    assert not simulates(w.bind(R.rgt, (1, 0)), c, enc)


def test_compiled_programs_valid():
    for name in FIXTURES:
        cp = compile_tm(load_fixture(name))
        assert check(cp.term) == []
        assert registers(cp.term) <= set(cp.roles.as_dict().values())


def test_compiled_on_empty_input():
    for name in FIXTURES:
        m = load_fixture(name)
        cp = compile_tm(m)
        out = run(cp.term, cp.initial_state(""))
        assert out.sound and cp.output(out) == tm_run(m, "")[0]
