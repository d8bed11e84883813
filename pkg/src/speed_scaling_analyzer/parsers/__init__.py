"""Instance file readers and writers."""

from .instance_parser import InstanceParser, read_instance, write_instance

__all__ = [
    'InstanceParser',
    'read_instance',
    'write_instance',
]
