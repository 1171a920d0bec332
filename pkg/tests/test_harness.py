import pytest

from bcolab import run_suite, RunReport, json_pack, json_unpack, build_instance, forward_witness, is_proper
from bcolab.harness import (SUITES, PERTURBATIONS, roundtrip_trial, claim5_trial, lemma1_trial, perturb_coloring,
                            reproduce_command)
from bcolab.errors import InfeasibleParametersError
from _util_test import get_triangle, get_cycle_orientation

SMALL = dict(n=4, wmax=1, cycles=1)


def test_empty_suite():
	report = run_suite('roundtrip', trials=0)
	assert report.ok
	assert report.summary == {'total': 0, 'passed': 0, 'failed': 0}


def test_roundtrip_trial():
	record = roundtrip_trial(3, **SMALL)
	assert record.passed, record
	assert record.seed == 3 and record.answer == 'yes'
	assert record.size > 0 and all(record.audit.values())
	assert 'stage' not in record and 'timings' not in record
	
	record = roundtrip_trial(3, timings=True, **SMALL)
	assert set(record.timings) == {'generate', 'solve', 'reduce', 'forward', 'verify', 'audit', 'extract'}


def test_roundtrip_suite():
	report = run_suite('roundtrip', seed=5, trials=3, **SMALL)
	assert report.ok
	assert [trial.seed for trial in report.trials] == [5, 6, 7]
	assert report.summary.passed == 3
	assert 'FAIL' not in str(report)


@pytest.mark.parametrize('mode', PERTURBATIONS)
def test_perturbations_are_caught(mode):
	red = build_instance(get_triangle())
	c = forward_witness(red, get_cycle_orientation())
	desc = perturb_coloring(red, c, mode, seed=1)
	assert 'recolored' in desc
	
	record = roundtrip_trial(0, perturb=mode, **SMALL)
	assert not record.passed
	assert record.stage in {'verify', 'audit'}


def test_leaf_perturbation_report():
	report = run_suite('roundtrip', trials=2, perturb='leaf', **SMALL)
	assert not report.ok and report.summary.failed == 2
	failure = report.failures()[0]
	assert failure.stage == 'verify'
	assert not failure.audit['superstar-injective']
	assert failure.reproduce == 'bcolab roundtrip --seed 0 --trials 1 --cycles 1 --n 4 --perturb leaf --wmax 1'
	
	text = str(report)
	assert 'FAIL seed=0 at verify' in text
	assert 'reproduce: bcolab roundtrip --seed 0' in text


def test_unknown_perturbation():
	red = build_instance(get_triangle())
	c = forward_witness(red, get_cycle_orientation())
	with pytest.raises(ValueError):
		perturb_coloring(red, c, 'everything')


def test_claim5():
	report = run_suite('claim5', trials=2)
	assert report.ok, str(report)
	assert 0 <= report.summary.max_increment <= 6
	assert report.summary.within_five == (report.summary.max_increment <= 5)
	
	record = claim5_trial(1)
	assert record.source_width == 2
	assert record.increment == record.width - 2


def test_lemma1():
	report = run_suite('lemma1', trials=6, n=7)
	assert report.ok, str(report)
	assert report.summary.max_excess <= 2
	assert all('exact' in trial for trial in report.trials)
	assert lemma1_trial(4, n=7).source_width == 5


def test_counting_is_reproducible():
	first = run_suite('counting', seed=2, trials=3, n=4, wmax=2, cycles=2)
	second = run_suite('counting', seed=2, trials=3, n=4, wmax=2, cycles=2)
	assert first.ok
	assert json_pack(first) == json_pack(second)
	for trial in first.trials:
		assert trial.size == trial.expected_size
		assert trial.degrees['Y'] == [4] and trial.degrees['L'] == [5]


def test_crosscheck():
	report = run_suite('crosscheck', trials=4, n=5, m=6)
	assert report.ok, str(report)
	assert [trial.kind for trial in report.trials] == ['bcol', 'circori', 'bcol', 'circori']


def test_noside():
	report = run_suite('noside', trials=3)
	assert report.ok, str(report)
	assert len(report.trials) <= 3
	assert all(trial.answer == 'no' for trial in report.trials)
	assert any('NO side' in note for note in report.notes)


def test_perturb_suite():
	report = run_suite('perturb', trials=2, n=3, wmax=1, samples=10)
	assert report.ok, str(report)
	assert report.summary.caught + report.summary.survived == 2 * (11 + 10)
	assert report.summary.caught > 0


def test_perturb_suite_tries_every_recoloring():
	report = run_suite('perturb', trials=1, n=3, wmax=1)
	assert report.ok, str(report)
	trial = report.trials[0]
	assert trial.caught + trial.survived == trial.size * (trial.k - 1)
	assert trial.caught > trial.survived


@pytest.mark.parametrize('name, params', [
	('noside', dict(n=2)),
	('crosscheck', dict(n=1)),
	('crosscheck', dict(m=1)),
	('roundtrip', dict(n=8, m=5)),
	('roundtrip', dict(wmax=0)),
	('claim5', dict(density=1.5)),
	('lemma1', dict(m=5)),
	('perturb', dict(samples=-1)),
])
def test_suite_parameters_rejected(name, params):
	with pytest.raises(InfeasibleParametersError):
		run_suite(name, trials=1, **params)


def test_smallest_suite_parameters():
	assert run_suite('crosscheck', trials=2, n=2, m=2).summary.total == 2
	assert run_suite('noside', trials=1, n=3, m=2).summary.total <= 1
	with pytest.raises(InfeasibleParametersError):
		run_suite('counting', trials=-1)


def test_crashing_trial_is_recorded():
	record = roundtrip_trial(0, perturb='everything', **SMALL)
	assert not record.passed
	assert record.stage == 'forward'
	assert record.error.startswith('ValueError: unknown perturbation')


def test_workers_match_inline():
	inline = run_suite('crosscheck', trials=4, n=4, m=5, workers=0)
	farmed = run_suite('crosscheck', trials=4, n=4, m=5, workers=2)
	assert json_pack(inline) == json_pack(farmed)


def test_report_packing():
	report = run_suite('roundtrip', trials=1, **SMALL)
	rec = json_unpack(json_pack(report))
	assert isinstance(rec, RunReport)
	assert rec.name == 'roundtrip' and rec.params.seed == 0 and rec.params.trials == 1
	assert rec.trials[0].passed and rec.summary.total == 1


def test_reproduce_command():
	assert reproduce_command('claim5', 12, {'wmax': 2, 'n': None}) == 'bcolab check claim5 --seed 12 --trials 1 --wmax 2'


def test_unknown_suite():
	assert 'roundtrip' in SUITES and 'perturb' in SUITES
	with pytest.raises(ValueError):
		run_suite('everything')
