"""스윕 워크플로우 테스트"""

import pytest

from src.graphs import SweepRunner, check_instance, create_initial_state, create_workflow, generate_arenas
from src.payoff import Mean, parse_payoff
from src.payoff.colours import ColourKind
from src.verify import Verdict

SMALL = {"num_states": 3, "max_actions": 2}


class TestInitialState:
    def test_defaults(self):
        state = create_initial_state("halfpos", "mean", 5, 11)
        assert state["shape"] == {}
        assert state["options"] == {}
        assert state["arenas"] == []
        assert state["result"] is None
        assert state["current_step"] == "initialized"

    def test_copies_inputs(self):
        shape = {"num_states": 2}
        state = create_initial_state("subgame", "mean", 1, 0, shape=shape)
        shape["num_states"] = 9
        assert state["shape"] == {"num_states": 2}


class TestGenerate:
    def test_seeded(self):
        shape = {"num_states": 3, "max_actions": 2, "reward_low": -1, "reward_high": 1, "density": "1/2"}
        first = generate_arenas(Mean(), 3, 5, shape)
        second = generate_arenas(Mean(), 3, 5, shape)
        assert [a.fingerprint() for a in first] == [a.fingerprint() for a in second]
        assert len(first) == 3

    def test_colour_kind_follows_payoff(self):
        shape = {"num_states": 2, "max_actions": 2, "reward_low": -1, "reward_high": 1, "density": "1/2"}
        (arena,) = generate_arenas(parse_payoff("parity"), 1, 0, shape)
        assert arena.colour_kind is ColourKind.PRIORITY


class TestCheckInstance:
    def test_subgame(self, e4):
        reports, errors = check_instance(("subgame", e4, Mean(), {"epsilons": ["1/8"]}, 5))
        assert errors == []
        assert [r.verdict for r in reports] == [Verdict.CONFIRMED]

    def test_halfpos(self, e3):
        reports, errors = check_instance(("halfpos", e3, Mean(), {}, 0))
        assert errors == []
        assert reports[0].verdict is Verdict.CONFIRMED

    def test_errors_are_collected(self, e4):
        reports, errors = check_instance(("halfpos", e4, parse_payoff("parity"), {}, 0))
        assert reports == []
        assert len(errors) == 1
        assert errors[0].startswith(f"{e4.name} (seed 0)")


class TestWorkflow:
    def test_empty_sweep(self):
        workflow = create_workflow(max_workers=1)
        final = workflow.invoke(create_initial_state("halfpos", "mean", 0, 0))
        assert final["current_step"] == "aggregate_completed"
        assert final["result"].verdict is Verdict.CONFIRMED
        assert final["result"].quantities["instances"] == 0


class TestSweepRunner:
    def test_halfpos_mean(self):
        runner = SweepRunner("halfpos", "mean", num_arenas=3, seed=11, shape=SMALL, max_workers=1)
        outcome = runner.run()
        assert outcome["success"]
        assert outcome["result"].verdict is Verdict.CONFIRMED
        assert outcome["result"].quantities["instances"] == 3
        assert outcome["result"].instance["seed"] == 11

    def test_reproducible(self):
        def once():
            runner = SweepRunner("halfpos", "mean", num_arenas=2, seed=3, shape=SMALL, max_workers=1)
            return runner.run()["result"].to_json()

        assert once() == once()

    def test_bad_payoff(self):
        outcome = SweepRunner("halfpos", "nonsense", num_arenas=2, max_workers=1).run()
        assert not outcome["success"]
        assert outcome["errors"]
        assert outcome["final_state"]["current_step"] == "aggregate_completed"

    def test_unknown_claim(self):
        with pytest.raises(ValueError):
            SweepRunner("zigzag", "mean")

    def test_defaults_from_config(self):
        runner = SweepRunner("subgame", "mean")
        assert runner.num_arenas == 200
        assert runner.seed == 20240917
