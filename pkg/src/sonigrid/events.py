"""Cross-layer event envelopes and the audio-request channel.

Events are the one-way wire from the engine to any UI, transcript, or test
harness. The name set is closed: an EventEnvelope with a name outside
EVENT_NAMES cannot be constructed, so downstream consumers never need a
default branch.

Sonification requests travel on a separate channel (AudioRequest) rather
than as events: they address the audio backend, not UI state, and keeping
them apart lets the replay key re-trigger sound without emitting any state
event.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

DISPLAY_MODE_CHANGED = "display-mode-changed"
SELECTION_CONFIRMED = "drag-select-selection-confirmed"
AUTOPLAY_STATE_CHANGED = "autoplay-state-changed"
FOCUS_MOVED = "focus-moved"
BOUNDARY_HIT = "boundary-hit"
ANNOUNCE = "announce"

EVENT_NAMES = frozenset(
    {
        DISPLAY_MODE_CHANGED,
        SELECTION_CONFIRMED,
        AUTOPLAY_STATE_CHANGED,
        FOCUS_MOVED,
        BOUNDARY_HIT,
        ANNOUNCE,
    }
)


@dataclass(frozen=True)
class EventEnvelope:
    name: str
    payload: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.name not in EVENT_NAMES:
            raise ValueError(f"unknown event name {self.name!r}")


def announce(text: str, **extra: Any) -> EventEnvelope:
    payload = {"text": text}
    payload.update(extra)
    return EventEnvelope(ANNOUNCE, payload)


# Audio request kinds. "data" sonifies a focus sample; "replay" repeats the
# current one; the rest are fixed cues.
AUDIO_DATA = "data"
AUDIO_REPLAY = "replay"
AUDIO_REFERENCE = "reference"
AUDIO_PEAK_POSITIVE = "peak_positive"
AUDIO_PEAK_NEGATIVE = "peak_negative"
AUDIO_BOUNDARY = "boundary"
AUDIO_BUFFER_PLAN = "buffer_plan"

AUDIO_KINDS = frozenset(
    {
        AUDIO_DATA,
        AUDIO_REPLAY,
        AUDIO_REFERENCE,
        AUDIO_PEAK_POSITIVE,
        AUDIO_PEAK_NEGATIVE,
        AUDIO_BOUNDARY,
        AUDIO_BUFFER_PLAN,
    }
)


@dataclass(frozen=True)
class AudioRequest:
    """One sound the engine wants played.

    ``focus`` is set for data/replay tones; ``plan`` for buffer playback;
    the fixed cues carry neither.
    """

    kind: str
    focus: Any = None
    plan: Any = None

    def __post_init__(self) -> None:
        if self.kind not in AUDIO_KINDS:
            raise ValueError(f"unknown audio request kind {self.kind!r}")
