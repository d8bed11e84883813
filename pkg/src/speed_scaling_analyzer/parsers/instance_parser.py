"""Readers and writers for instance files (JSON and CSV)."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

from ..exceptions import InstanceParseError
from ..models.job import Instance, Job

CSV_FIELDS = ("id", "r", "d", "w")


class InstanceParser:
    """Parses instance files.

    Two formats are accepted, chosen by file suffix:
    - JSON: {"jobs": [{"id": str, "r": num, "d": num, "w": num}, ...]}
    - CSV with header id,r,d,w
    """

    def __init__(self):
        """Initialize the instance parser."""
        self.logger = logging.getLogger(self.__class__.__name__)

    def parse_file(self, file_path: Path) -> Instance:
        """Parse an instance file.

        Args:
            file_path: Path to a .json or .csv file.

        Returns:
            Parsed Instance named after the file stem.

        Raises:
            InstanceParseError: If the file is malformed or a record is invalid.
            FileNotFoundError: If the file doesn't exist.
        """
        file_path = Path(file_path)
        if not file_path.exists():
            raise FileNotFoundError(f"Instance file not found: {file_path}")

        text = file_path.read_text(encoding="utf-8")
        if file_path.suffix.lower() == ".csv":
            records = self._records_from_csv(text, file_path)
        else:
            records = self._records_from_json(text, file_path)

        instance = self.parse_records(records, name=file_path.stem)
        self.logger.info(f"Parsed {len(instance)} jobs from {file_path}")
        return instance

    def parse_records(self, records: List[Mapping[str, Any]], name: str = "instance") -> Instance:
        """Build an instance from raw records, validating each one."""
        jobs = []
        seen = set()
        for index, record in enumerate(records, start=1):
            job = self._parse_record(record, index)
            if job.id in seen:
                raise InstanceParseError(f"Duplicate job id {job.id!r} in record {index}", record=job.id)
            seen.add(job.id)
            jobs.append(job)
        return Instance.from_jobs(jobs, name=name)

    def _records_from_json(self, text: str, file_path: Path) -> List[Mapping[str, Any]]:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise InstanceParseError(f"Failed to parse {file_path}: {e}")

        if not isinstance(document, dict) or not isinstance(document.get("jobs"), list):
            raise InstanceParseError(f"{file_path}: expected an object with a 'jobs' list")
        for index, record in enumerate(document["jobs"], start=1):
            if not isinstance(record, dict):
                raise InstanceParseError(f"{file_path}: record {index} is not an object", record=index)
        return document["jobs"]

    def _records_from_csv(self, text: str, file_path: Path) -> List[Mapping[str, Any]]:
        reader = csv.DictReader(text.splitlines())
        header = tuple(name.strip() for name in (reader.fieldnames or ()))
        if header != CSV_FIELDS:
            raise InstanceParseError(f"{file_path}: expected CSV header {','.join(CSV_FIELDS)}, got {header}")
        return [{key.strip(): value for key, value in row.items()} for row in reader]

    def _parse_record(self, record: Mapping[str, Any], index: int) -> Job:
        """Parse one job record.

        Raises:
            InstanceParseError: Naming the record id (or position) on any problem.
        """
        label = record.get("id")
        if label is None or not str(label).strip():
            raise InstanceParseError(f"Record {index}: missing job id", record=index)
        label = str(label).strip()

        release = self.get_float(record, "r", label)
        deadline = self.get_float(record, "d", label)
        volume = self.get_float(record, "w", label)

        if not release < deadline:
            raise InstanceParseError(
                f"Job {label!r}: release {release} must be before deadline {deadline}", record=label
            )
        if not volume > 0:
            raise InstanceParseError(f"Job {label!r}: volume must be positive, got {volume}", record=label)
        try:
            return Job(id=label, release=release, deadline=deadline, volume=volume)
        except ValueError as e:
            raise InstanceParseError(f"Job {label!r}: {e}", record=label) from e

    def get_float(self, record: Mapping[str, Any], key: str, label: str) -> float:
        """Read a numeric field of a record.

        Raises:
            InstanceParseError: If the field is missing or not a finite number.
        """
        value = record.get(key)
        if value is None or (isinstance(value, str) and not value.strip()):
            raise InstanceParseError(f"Job {label!r}: missing field {key!r}", record=label)
        if isinstance(value, bool):
            raise InstanceParseError(f"Job {label!r}: field {key!r} is not a number: {value!r}", record=label)
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise InstanceParseError(f"Job {label!r}: field {key!r} is not a number: {value!r}", record=label)
        if number != number or number in (float("inf"), float("-inf")):
            raise InstanceParseError(f"Job {label!r}: field {key!r} must be finite", record=label)
        return number


def instance_records(instance: Instance) -> List[Dict[str, Union[str, float]]]:
    return [
        {"id": job.id, "r": job.release, "d": job.deadline, "w": job.volume}
        for job in instance.jobs
    ]


def read_instance(path: Union[str, Path]) -> Instance:
    """Read an instance from a JSON or CSV file."""
    return InstanceParser().parse_file(Path(path))


def write_instance(instance: Instance, path: Union[str, Path]) -> Path:
    """Write an instance; the format follows the suffix (.csv, otherwise JSON).

    Floats are written with repr precision so a read gives back the same instance.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = instance_records(instance)
    if path.suffix.lower() == ".csv":
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_FIELDS)
            for record in records:
                writer.writerow([record["id"], repr(record["r"]), repr(record["d"]), repr(record["w"])])
    else:
        path.write_text(json.dumps({"jobs": records}, indent=2), encoding="utf-8")
    return path
