import io
import json

import numpy as np
import pytest

from wavecontrol import constants as C
from wavecontrol.services.report_writer import ReportWriter
from wavecontrol.views.summary_view import SummaryView


def test_table_and_sidecar(tmp_path):
    out = str(tmp_path / 'results')
    path = ReportWriter.write_table(
        out, 'spectrum', ['n', 'value'],
        [[1, 0.1], [np.int64(2), np.float64(1 / 3)]],
        {'seed': 5, 'lam': 1 + 2j, 'limit': float('inf')})
    header, rows = ReportWriter.read_table(path)
    assert header == ['n', 'value']
    assert rows == [['1', '0.1'], ['2', repr(1 / 3)]]
    meta = json.loads((tmp_path / 'results' / ('spectrum'
                       + C.SIDECAR_SUFFIX)).read_text(encoding='utf-8'))
    assert meta == {'columns': ['n', 'value'], 'rows': 2, 'seed': 5,
                    'lam': [1.0, 2.0], 'limit': 'inf'}


def test_tables_are_deterministic(tmp_path):
    rows = [[0.1 * k, k % 2 == 0] for k in range(5)]
    first = ReportWriter.write_table(str(tmp_path / 'a'), 't', ['x', 'ok'],
                                     rows)
    second = ReportWriter.write_table(str(tmp_path / 'b'), 't', ['x', 'ok'],
                                      rows)
    with open(first, 'rb') as f, open(second, 'rb') as g:
        assert f.read() == g.read()


def test_row_length_mismatch(tmp_path):
    with pytest.raises(ValueError):
        ReportWriter.write_table(str(tmp_path), 'bad', ['a', 'b'], [[1]])


def test_summary_view():
    stream = io.StringIO()
    view = SummaryView(stream, max_rows=2)
    view.draw(view.render_table('T', ['a', 'b'],
                                [[1, 0.5], [True, 2j], [3, 4]]))
    view.draw(view.render_checks([('first', True, 'x'),
                                  ('second', False, 'y')]))
    text = stream.getvalue()
    assert "== T ==" in text
    assert "да" in text and "0+2j" in text
    assert "ещё строк: 1" in text
    assert "[OK  ] first: x" in text and "[FAIL] second: y" in text
