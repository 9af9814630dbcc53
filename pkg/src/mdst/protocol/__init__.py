from .apsp import ApspProcess
from .mdst import MdstProcess
from .messages import ProtocolError

__all__ = ["ApspProcess", "MdstProcess", "ProtocolError"]
