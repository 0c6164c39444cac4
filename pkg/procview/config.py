# Constants
START_PORT = "start"  # entry point of an elementary process
STOP_PORT = "stop"  # exit point of an elementary process
RESERVED_PORTS = (START_PORT, STOP_PORT)

BUFFER_SUFFIX = "Buf"  # `x` is buffered in the local variable `xBuf`

DEFAULT_HORIZON = 50  # ticks simulated when no horizon is given
DEFAULT_CHOOSER = "round_robin"  # policy of the `@` connector

MAX_MEASUREMENT_ENVS = 256  # cap of the default WCET input space
MEASUREMENT_INT_DOMAIN = (-1, 0, 1, 2)  # Int values tried by the input space

PNML_NAMESPACE = "http://www.pnml.org/version-2009/grammar/pnml"
PNML_PTNET_TYPE = "http://www.pnml.org/version-2009/grammar/ptnet"
MAX_REACHABLE_MARKINGS = 10_000  # bound of the reachability exploration

CONTROL_COLOR = "orange"  # entry/exit channels and connectors
DATA_COLOR = "black"
PNML_TOOL = "procview"  # `tool` of the toolspecific annotations
PNML_TOOL_VERSION = "0.1.0"
