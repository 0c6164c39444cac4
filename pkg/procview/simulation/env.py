from typing import Dict, Iterator, Mapping, Sequence, Union

from procview.composition.network import Network
from procview.errors import HorizonMismatchError, UnknownStreamError
from procview.streams.interval import TimeInterval
from procview.streams.stream import TimedStream

ENTRY_ALIAS = "entry"


class EnvInputs(Mapping[str, TimedStream]):
    """
    Streams the environment feeds into the external inputs of a network.

    Channels the environment does not mention stay silent; use
    :meth:`complete` to obtain one stream per external input.

    Args:
        streams (Mapping[str, TimedStream]): Stream per external input channel.
    """

    def __init__(self, streams: Mapping[str, TimedStream] = None):
        self._streams: Dict[str, TimedStream] = dict(streams or {})

    def __getitem__(self, channel: str) -> TimedStream:
        return self._streams[channel]

    def __iter__(self) -> Iterator[str]:
        return iter(self._streams)

    def __len__(self) -> int:
        return len(self._streams)

    def __repr__(self):
        return f"EnvInputs({sorted(self._streams)})"

    @classmethod
    def from_events(
        cls,
        network: Network,
        horizon: int,
        events: Mapping[str, Mapping[int, Union[TimeInterval, Sequence]]],
    ) -> "EnvInputs":
        """
        Build inputs from sparse ``{channel: {tick: messages}}`` maps.

        The channel ``entry`` stands for the entry of the network.

        Example::

            >>> env = EnvInputs.from_events(net, 20, {"entry": {0: ["ev"]}})
        """
        streams = {}
        for channel, ticks in events.items():
            channel = resolve_channel(network, channel)
            msg_type = network.channels[channel].msg_type
            streams[channel] = TimedStream.from_ticks(msg_type, horizon, ticks)
        return cls(streams)

    def complete(self, network: Network, horizon: int) -> Dict[str, TimedStream]:
        """
        Return one stream per external input of `network`.

        Raises:
            UnknownStreamError: If a stream feeds no external input.
            HorizonMismatchError: If a stream does not span `horizon` ticks.
        """
        external = network.external_inputs
        unknown = sorted(set(self._streams) - set(external))
        if unknown:
            raise UnknownStreamError(
                f"Environment streams {unknown} feed no external input of "
                f"{network.name!r}; external inputs are {sorted(external)}."
            )
        streams = {}
        for channel in external:
            stream = self._streams.get(channel)
            if stream is None:
                stream = TimedStream.empty(network.channels[channel].msg_type, horizon)
            elif stream.horizon != horizon:
                raise HorizonMismatchError(
                    f"Environment stream {channel!r} has {stream.horizon} ticks, "
                    f"expected {horizon}."
                )
            streams[channel] = stream
        return streams


def resolve_channel(network: Network, channel: str) -> str:
    """
    Resolve ``entry`` to the entry channel of `network`, check that any
    other name is an external input.

    Raises:
        UnknownStreamError: If the channel is not an external input.
    """
    if channel == ENTRY_ALIAS:
        if network.entry is None:
            raise UnknownStreamError(f"{network.name!r} has no entry point.")
        return network.entry
    if channel not in network.external_inputs:
        raise UnknownStreamError(
            f"{channel!r} is not an external input of {network.name!r}."
        )
    return channel
