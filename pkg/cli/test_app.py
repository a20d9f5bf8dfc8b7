#!/usr/bin/env python3
"""
Tests for the geophase command-line tool: JSON codec, exit codes and reports.
"""

import os
import sys
import json

import numpy as np
import pytest

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cli.app import EXIT_IDENTITY_FAILURE, EXIT_INPUT_ERROR, EXIT_OK, load_job_file, main, parse_matrix_json
from core.errors import ParseError
from core.grassmann import GrassmannPoint, ManifoldSpec
from core.phases import triangle_area_closed
from core.utils import pairs_to_matrix

GATE_IDENTITIES = {
    'round_trip', 'exponential', 'quadrature_area', 'phase_area', 'block_product', 'schur_alpha', 'zzz',
    'phase_chain', 'isotropy', 'bridge', 'dupont_quadrature', 'dupont_closed', 'cocycle_condition',
    'automorphy', 'kernel_covariance'
}


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding='utf-8')
    return str(path)


def run(tmp_path, argv, name='report.json'):
    out = tmp_path / name
    code = main(argv + ['--out', str(out)])
    return code, json.loads(out.read_text(encoding='utf-8'))


class TestMatrixCodec:
    def test_examples(self):
        assert np.array_equal(parse_matrix_json('[[[0,0]]]'), np.zeros((1, 1), dtype=complex))
        matrix = parse_matrix_json('[[[1,0],[0,1]],[[0,-1],[1,0]]]')
        assert np.array_equal(matrix, np.array([[1, 1j], [-1j, 1]]))

    def test_ragged_row(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_json('[[[1,0],[0,0]],[[1,0]]]')
        assert info.value.row == 1

    def test_bad_entries(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_json('[[[1,0],[1,0,0]]]')
        assert (info.value.row, info.value.col) == (0, 1)
        with pytest.raises(ParseError):
            parse_matrix_json('[[["a",0]]]')
        with pytest.raises(ParseError):
            parse_matrix_json('[[[true,0]]]')
        with pytest.raises(ParseError):
            parse_matrix_json('[]')
        with pytest.raises(ParseError):
            parse_matrix_json('[[[1,0]')

    def test_job_file_forms(self, tmp_path):
        bare = load_job_file(write_json(tmp_path / 'bare.json', [[[[0.1, 0.0]]], [[[0.0, 0.2]]]]))
        assert len(bare['inputs']) == 2 and bare['space'] is None

        tagged = load_job_file(write_json(tmp_path / 'tagged.json', {
            'space': 'disc', 'weight': 2, 'inputs': [[[[0.1, 0.0]]], [[[0.0, 0.2]]]]
        }))
        assert tagged['space'] == 'disc' and tagged['weight'] == 2
        assert tagged['inputs'][1][0, 0] == 0.2j


class TestVerify:
    ARGS = ['verify', '--manifold', '1,1,-1', '--seed', '42', '--trials', '3']

    def test_passes_and_reports_every_identity(self, tmp_path):
        code, report = run(tmp_path, self.ARGS)
        assert code == EXIT_OK
        assert report['schema'] == 1 and report['success'] is True
        block = report['identities']['1,1,-1']
        assert set(block) == GATE_IDENTITIES
        for summary in block.values():
            assert summary['passed'] and summary['errors'] == 0
            assert summary['max_residual'] <= summary['tolerance']
        assert report['input']['seed'] == 42
        assert report['tolerances']['quadrature_area'] == 1e-6

    def test_is_deterministic(self, tmp_path):
        texts = []
        for name in ('first.json', 'second.json'):
            out = tmp_path / name
            assert main(self.ARGS + ['--out', str(out)]) == EXIT_OK
            lines = out.read_text(encoding='utf-8').splitlines()
            texts.append([line for line in lines if '"wall_time_seconds"' not in line])
        assert texts[0] == texts[1]

    def test_tight_tolerance_fails(self, tmp_path):
        code, report = run(tmp_path, self.ARGS + ['--tol', 'algebraic=1e-300'])
        assert code == EXIT_IDENTITY_FAILURE
        assert report['success'] is False
        assert report['identities']['1,1,-1']['block_product']['passed'] is False
        assert report['tolerances']['algebraic'] == 1e-300

    def test_cases_can_be_audited(self, tmp_path):
        _, report = run(tmp_path, self.ARGS)
        spec = ManifoldSpec(1, 1, -1)
        phase_cases = [case['data'] for case in report['cases'] if case['data']['check'] == 'phase']
        assert len(phase_cases) == 3
        for case in phase_cases:
            Z1 = GrassmannPoint(spec, pairs_to_matrix(case['inputs']['Z1']))
            Z2 = GrassmannPoint(spec, pairs_to_matrix(case['inputs']['Z2']))
            assert abs(triangle_area_closed(Z1, Z2).value - case['values']['area']) <= 1e-15

    def test_several_manifolds(self, tmp_path):
        code, report = run(tmp_path, ['verify', '--manifold', '1,2,-1', '--manifold', '2,1,-1',
                                      '--seed', '7', '--trials', '1'])
        assert code == EXIT_OK
        assert set(report['identities']) == {'1,2,-1', '2,1,-1'}


class TestExplicitInputs:
    def test_phase_on_given_points(self, tmp_path):
        path = write_json(tmp_path / 'pair.json', {'inputs': [[[[0.5, 0.0]]], [[[0.0, 0.3]]]]})
        code, report = run(tmp_path, ['phase', '--manifold', '1,1,-1', '--in', path])
        assert code == EXIT_OK
        values = report['cases'][0]['data']['values']
        assert abs(values['phase'] + np.arctan(0.15)) <= 1e-14
        assert abs(values['area'] + 0.5 * np.arctan(0.15)) <= 1e-14

    def test_area_with_three_vertices(self, tmp_path):
        path = write_json(tmp_path / 'triangle.json',
                          [[[[0.1, 0.1]]], [[[0.5, 0.0]]], [[[0.0, 0.3]]]])
        code, report = run(tmp_path, ['area', '--manifold', '1,1,-1', '--in', path])
        assert code == EXIT_OK
        values = report['cases'][0]['data']['values']
        assert abs(values['closed'] - values['quadrature']) <= 1e-6

    def test_rank_one_plane(self, tmp_path):
        path = write_json(tmp_path / 'plane.json', {'space': 'plane', 'inputs': [[[[1, 0]]], [[[0, 1]]]]})
        code, report = run(tmp_path, ['rankone', '--in', path])
        assert code == EXIT_OK
        values = report['cases'][0]['data']['values']
        assert values['phase'] == -1.0 and values['area'] == -0.5

    def test_rank_one_suite(self, tmp_path):
        code, report = run(tmp_path, ['rankone', '--seed', '3', '--trials', '4'])
        assert code == EXIT_OK
        assert set(report['identities']) == {'sphere', 'disc', 'plane'}

    def test_failing_case_does_not_stop_the_suite(self, tmp_path):
        path = write_json(tmp_path / 'antipodal.json', [[[[1, 0]]], [[[-1, 0]]]])
        code, report = run(tmp_path, ['cocycle', '--manifold', '1,1,1', '--in', path])
        assert code == EXIT_IDENTITY_FAILURE
        assert report['success'] is False
        assert [case['details']['check'] for case in report['cases']] == ['gauss', 'cocycle']
        for case in report['cases']:
            assert case['success'] is False and case['error_type'] == 'PairInvalid'
        for summary in report['identities']['1,1,1'].values():
            assert summary['passed'] is False and summary['errors'] == 1

    def test_prints_to_stdout(self, tmp_path, capsys):
        path = write_json(tmp_path / 'pair.json', [[[[0.2, 0.0]]], [[[0.0, 0.2]]]])
        assert main(['phase', '--manifold', '1,1,1', '--in', path]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)['command'] == 'phase'


class TestInputErrors:
    @pytest.mark.parametrize("argv,error_type", [
        (['verify', '--tol', 'nonsense=1e-3'], 'ValidationError'),
        (['verify', '--manifold', '1,1,0'], 'ValidationError'),
        (['verify', '--order', '2'], 'ValidationError'),
        (['verify', '--trials', '0'], 'ValidationError'),
        (['verify', '--k', '0'], 'ValidationError'),
    ])
    def test_bad_flags(self, tmp_path, argv, error_type):
        code, record = run(tmp_path, argv)
        assert code == EXIT_INPUT_ERROR
        assert record['success'] is False and record['error_type'] == error_type

    def test_ragged_input_file(self, tmp_path):
        path = tmp_path / 'ragged.json'
        path.write_text('{"inputs": [[[[1,0],[0,0]],[[1,0]]], [[[0,0]]]]}', encoding='utf-8')
        code, record = run(tmp_path, ['phase', '--manifold', '1,2,-1', '--in', str(path)])
        assert code == EXIT_INPUT_ERROR
        assert record['error_type'] == 'ParseError'

    def test_point_outside_the_ball(self, tmp_path):
        path = write_json(tmp_path / 'outside.json', [[[[1.5, 0.0]]], [[[0.0, 0.0]]]])
        code, record = run(tmp_path, ['phase', '--manifold', '1,1,-1', '--in', path])
        assert code == EXIT_INPUT_ERROR
        assert record['error_type'] == 'DomainError'

    def test_verify_rejects_inputs(self, tmp_path):
        path = write_json(tmp_path / 'pair.json', [[[[0.1, 0.0]]], [[[0.0, 0.1]]]])
        code, _ = run(tmp_path, ['verify', '--manifold', '1,1,-1', '--in', path])
        assert code == EXIT_INPUT_ERROR

    def test_shape_mismatch(self, tmp_path):
        path = write_json(tmp_path / 'pair.json', [[[[0.1, 0.0]]], [[[0.0, 0.1]]]])
        code, _ = run(tmp_path, ['phase', '--manifold', '2,2,-1', '--in', path])
        assert code == EXIT_INPUT_ERROR

    def test_bad_log_level(self, capsys):
        assert main(['verify', '--log-level', 'LOUD']) == EXIT_INPUT_ERROR
        assert json.loads(capsys.readouterr().out)['success'] is False


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
