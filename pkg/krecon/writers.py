"""Bench record output."""

import abc
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, TextIO, Union

from .bench import CSV_COLUMNS, TIMING_COLUMNS, BenchRecord, csv_row
from .utils import CustomJsonEncoder


class AbstractRecordWriter(abc.ABC):  # pylint: disable=too-few-public-methods
    """Writes bench records to a destination."""

    @abc.abstractmethod
    def __call__(self, record: BenchRecord):
        raise NotImplementedError()

    def close(self):
        pass


def _prepare_file(file_name: str):
    dir_path = os.path.dirname(file_name)
    if dir_path:
        os.makedirs(dir_path, exist_ok=True)


@dataclass
class CsvRecordWriter(AbstractRecordWriter):
    """
    Writes the CSV header once, then one row per record (UTF-8, LF line endings).
    Without a file name rows go to standard output.
    """

    file_name: Optional[str] = None
    drop_timing: bool = False
    """ Leave out the wall-clock columns, for byte-comparable output. """
    stream: Optional[TextIO] = field(default=None, repr=False)

    def __post_init__(self):
        self._own_stream = False
        if self.stream is None:
            if self.file_name:
                _prepare_file(self.file_name)
                self.stream = open(  # pylint: disable=consider-using-with
                    self.file_name, "w", encoding="utf-8", newline=""
                )
                self._own_stream = True
            else:
                self.stream = sys.stdout
        self._columns = [c for c in CSV_COLUMNS if not (self.drop_timing and c in TIMING_COLUMNS)]
        self._writer = csv.writer(self.stream, lineterminator="\n")
        self._writer.writerow(self._columns)

    def __call__(self, record: BenchRecord):
        row = dict(zip(CSV_COLUMNS, csv_row(record)))
        self._writer.writerow([row[c] for c in self._columns])

    def close(self):
        self.stream.flush()
        if self._own_stream:
            self.stream.close()


@dataclass
class JsonRecordWriter(AbstractRecordWriter):
    """Appends records to a JSON-lines file."""

    file_name: str

    def __post_init__(self):
        _prepare_file(self.file_name)
        # Create the file if it doesn't exist
        with open(self.file_name, "a", encoding="utf-8"):
            pass

    def __call__(self, record: BenchRecord):
        with open(self.file_name, "a", encoding="utf-8") as f:
            f.write(json.dumps(asdict(record), cls=CustomJsonEncoder) + "\n")


TRecordWriter = Union[AbstractRecordWriter, Callable[[BenchRecord], None]]
