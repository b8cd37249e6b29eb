from .. import constants as C


class SummaryView:
    """Вывод итогов команды в консоль: заголовок, таблица и вердикт."""

    def __init__(self, stream=None, max_rows=C.SUMMARY_MAX_ROWS):
        self.stream = stream
        self.max_rows = max_rows

    @staticmethod
    def _format(value):
        if isinstance(value, bool):
            return "да" if value else "нет"
        if isinstance(value, float):
            return f"{value:.6g}"
        if isinstance(value, complex):
            return f"{value.real:.4g}{value.imag:+.4g}j"
        return str(value)

    def render_table(self, title, columns, rows):
        """Таблица фиксированной ширины; длинные таблицы обрезаются."""
        shown = rows[:self.max_rows]
        cells = [[self._format(v) for v in row] for row in shown]
        widths = [max([len(c)] + [len(r[i]) for r in cells])
                  for i, c in enumerate(columns)]
        lines = [f"== {title} =="]
        lines.append("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
        for row in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
        if len(rows) > len(shown):
            lines.append(f"... ещё строк: {len(rows) - len(shown)}")
        return "\n".join(lines)

    def render_checks(self, checks):
        """Список проверок (имя, прошла, подробности)."""
        lines = ["== Проверки =="]
        for name, passed, detail in checks:
            mark = "OK  " if passed else "FAIL"
            lines.append(f"[{mark}] {name}: {detail}")
        return "\n".join(lines)

    def draw(self, text):
        print(text, file=self.stream)
