import csv
import json
import logging
import math
import os
from dataclasses import asdict, is_dataclass

import numpy as np

from .. import constants as C

log = logging.getLogger(__name__)


def _cell(value):
    """Значение ячейки CSV: числа в кратчайшей точной записи."""
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return repr(complex(value))
    return value


def _jsonable(value):
    """Приведение numpy-типов и dataclass к JSON-совместимому виду."""
    if is_dataclass(value) and not isinstance(value, type):
        return _jsonable(asdict(value))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_jsonable(value.real), _jsonable(value.imag)]
    return value


class ReportWriter:
    """Запись таблиц результатов в CSV с JSON-описанием рядом."""
    _dirs = set()

    @classmethod
    def _ensure_dir(cls, out_dir):
        """Создаёт каталог результатов один раз за запуск."""
        if out_dir in cls._dirs:
            return
        os.makedirs(out_dir, exist_ok=True)
        cls._dirs.add(out_dir)

    @staticmethod
    def _get_path(out_dir, name, suffix='.csv'):
        """Возвращает полный путь к файлу результата."""
        return os.path.join(out_dir, name + suffix)

    @classmethod
    def write_table(cls, out_dir, name, columns, rows, metadata=None):
        """Пишет name.csv с заголовком и name.meta.json; возвращает путь к CSV."""
        cls._ensure_dir(out_dir)
        path = cls._get_path(out_dir, name)
        try:
            with open(path, 'w', newline='', encoding='utf-8') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(columns)
                for row in rows:
                    if len(row) != len(columns):
                        raise ValueError(
                            f"Строка {row} не соответствует "
                            f"колонкам {columns}")
                    writer.writerow([_cell(v) for v in row])
        except IOError as e:
            log.error("Ошибка: не удалось записать таблицу '%s': %s", path, e)
            raise
        cls.write_metadata(out_dir, name, {'columns': list(columns),
                                           'rows': len(rows),
                                           **(metadata or {})})
        log.info("Таблица %s: %d строк", path, len(rows))
        return path

    @classmethod
    def write_metadata(cls, out_dir, name, metadata):
        cls._ensure_dir(out_dir)
        path = cls._get_path(out_dir, name, C.SIDECAR_SUFFIX)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(json.dumps(_jsonable(metadata), ensure_ascii=False,
                               indent=2, sort_keys=True))
            f.write('\n')
        return path

    @staticmethod
    def read_table(path):
        """Читает CSV обратно: заголовок и строки как списки строк."""
        with open(path, newline='', encoding='utf-8') as f:
            reader = csv.reader(f)
            header = next(reader)
            return header, [row for row in reader]
