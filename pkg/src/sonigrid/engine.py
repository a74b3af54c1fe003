"""The interaction state machine: one engine instance per loaded dataset.

The engine is single-owner: exactly one caller feeds it keys (and autoplay
ticks) at a time. Each call returns an immutable StepResult carrying the
event envelopes for UI/transcript consumers and the audio requests for the
sonification backend. Unknown keys are ignored: no events, no state change.

Key precedence when sub-machines overlap: an active selection owns D,
Enter, Escape and the arrows (other interaction keys get a busy
announcement); jump mode ends when a key moves the cursor or starts
another interaction; a playing sweep pauses on any interaction key except
the reference and replay tones, which remain pure audio.
"""

from __future__ import annotations

from dataclasses import replace
from typing import NamedTuple, Optional

from . import autoplay as sweep
from . import navigation as nav
from . import peaks as salience
from . import regions
from .config import EngineConfig
from .dataset import (
    DatasetStats,
    GridModel,
    SurfaceDataset,
    build_grid,
    compute_stats,
    detect_lattice,
)
from .errors import NoPeaksError
from .events import (
    AUDIO_BOUNDARY,
    AUDIO_BUFFER_PLAN,
    AUDIO_DATA,
    AUDIO_PEAK_NEGATIVE,
    AUDIO_PEAK_POSITIVE,
    AUDIO_REFERENCE,
    AUDIO_REPLAY,
    AUTOPLAY_STATE_CHANGED,
    BOUNDARY_HIT,
    DISPLAY_MODE_CHANGED,
    FOCUS_MOVED,
    AudioRequest,
    EventEnvelope,
    announce,
)
from .navigation import FocusSample, HighlightState, NavCursor

ARROW_ACTIONS = ("left", "right", "forward", "back")

# Keys that interrupt a playing sweep. Reference and replay stay pure audio
# so re-listening never perturbs interaction state.
PAUSING_ACTIONS = frozenset(
    {"left", "right", "forward", "back", "toggle_mode", "jump", "select", "playback", "confirm"}
)

BUSY_SELECTION_TEXT = "Selection in progress. Press Enter to confirm or Escape to cancel."


class StepResult(NamedTuple):
    events: tuple[EventEnvelope, ...]
    audio: tuple[AudioRequest, ...]


EMPTY_RESULT = StepResult((), ())


class Engine:
    def __init__(self, dataset: SurfaceDataset, config: EngineConfig | None = None) -> None:
        self.config = config or EngineConfig()
        self.dataset = dataset
        self.stats: DatasetStats = compute_stats(dataset)
        self.grid: GridModel = build_grid(dataset, self.config.grid_rows, self.config.grid_cols)
        self.lattice = detect_lattice(dataset)
        self._key_to_action = self.config.key_to_action()

        self.cursor = NavCursor(grid_pos=nav.first_occupied_cell(self.grid))
        self.selection = regions.SelectionState()
        self.buffer: Optional[regions.RegionBuffer] = None
        self.peaks: Optional[salience.PeakSet] = None
        self.program: Optional[sweep.SweepProgram] = None
        self.highlight = HighlightState()
        self._inside_region = False
        self._last_perspective: Optional[str] = None
        self._last_focus: FocusSample = self.current_focus()
        self._refresh_highlight()

    # ------------------------------------------------------------------ helpers

    def current_focus(self) -> FocusSample:
        return nav.current_focus(self.cursor, self.grid, self.dataset, self.stats)

    def _cursor_cell(self) -> tuple[int, int]:
        if self.cursor.mode == nav.SURFACE:
            return self.cursor.grid_pos
        x, _y, z = self.dataset.points[self.cursor.point_index]
        return self.grid.cell_of(x, z)

    def _position_payload(self) -> dict:
        if self.cursor.mode == nav.SURFACE:
            row, col = self.cursor.grid_pos
            return {"row": row, "col": col}
        return {"index": self.cursor.point_index}

    def _focus_moved(self) -> EventEnvelope:
        focus = self.current_focus()
        self._last_focus = focus
        return EventEnvelope(
            FOCUS_MOVED,
            {
                "focus": focus.as_payload(),
                "mode": self.cursor.mode,
                "position": self._position_payload(),
            },
        )

    def _boundary_hit(self, direction: str) -> EventEnvelope:
        return EventEnvelope(
            BOUNDARY_HIT,
            {"direction": direction, "mode": self.cursor.mode, "position": self._position_payload()},
        )

    def _data_request(self) -> AudioRequest:
        return AudioRequest(AUDIO_DATA, focus=self._last_focus)

    def _refresh_highlight(self) -> None:
        if self.cursor.mode == nav.SURFACE:
            row, col = self.cursor.grid_pos
            focus_idx = row * self.grid.cols + col
        else:
            focus_idx = self.cursor.point_index

        cells: frozenset[int] = frozenset()
        bounds = None
        if self.selection.phase == regions.EXPANDING:
            bounds = self.selection.bounds()
        elif self.buffer is not None:
            bounds = self.buffer.bounds
        if bounds is not None:
            cells = frozenset(
                row * self.grid.cols + col
                for row in range(bounds.row_min, bounds.row_max + 1)
                for col in range(bounds.col_min, bounds.col_max + 1)
            )
        style = "white" if bounds is not None and bounds.contains(self._cursor_cell()) else "yellow"
        self.highlight = HighlightState(
            focus_highlight=focus_idx, selection_highlights=cells, cursor_style=style
        )

    def _watch_region(self, events: list[EventEnvelope]) -> None:
        self._inside_region, event = regions.boundary_watch(
            self.buffer, self._cursor_cell(), self._inside_region
        )
        if event is not None:
            events.append(event)

    def _exit_jump_in_place(self) -> None:
        """Leave jump mode keeping the current position (manual navigation)."""
        self.cursor = nav.with_interaction(self.cursor, nav.IDLE)
        self.peaks = None

    # ------------------------------------------------------------------- public

    def press(self, key_id: str) -> StepResult:
        action = self._key_to_action.get(key_id)
        if action is None:
            return EMPTY_RESULT

        events: list[EventEnvelope] = []
        audio: list[AudioRequest] = []

        if (
            self.program is not None
            and self.program.state == sweep.PLAYING
            and action in PAUSING_ACTIONS
        ):
            self.program = sweep.pause(self.program)
            self.cursor = nav.with_interaction(self.cursor, nav.IDLE)
            events.append(
                EventEnvelope(
                    AUTOPLAY_STATE_CHANGED,
                    {"state": "paused", "perspective": self.program.perspective},
                )
            )

        handler = getattr(self, f"_on_{action}")
        handler(events, audio)

        self._watch_region(events)
        self._refresh_highlight()
        return StepResult(tuple(events), tuple(audio))

    def tick(self) -> StepResult:
        """Advance a playing sweep by one command."""
        if self.program is None or self.program.state != sweep.PLAYING:
            return EMPTY_RESULT
        events: list[EventEnvelope] = []
        audio: list[AudioRequest] = []
        self.program, cell = sweep.tick(self.program)
        if cell is None:
            events.append(
                EventEnvelope(
                    AUTOPLAY_STATE_CHANGED,
                    {"state": "finished", "perspective": self.program.perspective},
                )
            )
            self.cursor = nav.with_interaction(self.cursor, nav.IDLE)
        else:
            self.cursor = replace(self.cursor, grid_pos=cell)
            events.append(self._focus_moved())
            audio.append(self._data_request())
        self._watch_region(events)
        self._refresh_highlight()
        return StepResult(tuple(events), tuple(audio))

    # ------------------------------------------------------------ action handlers

    def _selection_active(self) -> bool:
        return self.selection.phase != regions.INACTIVE

    def _on_reference(self, events, audio) -> None:
        audio.append(AudioRequest(AUDIO_REFERENCE))

    def _on_replay(self, events, audio) -> None:
        audio.append(AudioRequest(AUDIO_REPLAY, focus=self._last_focus))

    def _move_normally(self, action: str, events, audio) -> None:
        if self.cursor.interaction == nav.JUMP:
            self._exit_jump_in_place()
        if self.cursor.mode == nav.SURFACE:
            new_pos = nav.move_surface(self.cursor.grid_pos, action, self.grid)
            if new_pos is None:
                events.append(self._boundary_hit(action))
                audio.append(AudioRequest(AUDIO_BOUNDARY))
                return
            self.cursor = replace(self.cursor, grid_pos=new_pos)
        else:
            new_index = nav.move_point(self.cursor.point_index, action, self.dataset, self.lattice)
            if new_index is None:
                events.append(self._boundary_hit(action))
                audio.append(AudioRequest(AUDIO_BOUNDARY))
                return
            self.cursor = replace(self.cursor, point_index=new_index)
        events.append(self._focus_moved())
        audio.append(self._data_request())

    def _expand_selection(self, action: str, events, audio) -> None:
        new_corner = nav.move_corner(self.selection.cursor_corner, action, self.grid)
        if new_corner is None:
            events.append(self._boundary_hit(action))
            audio.append(AudioRequest(AUDIO_BOUNDARY))
            return
        self.selection = replace(self.selection, cursor_corner=new_corner)
        if self.cursor.mode == nav.SURFACE:
            self.cursor = replace(self.cursor, grid_pos=new_corner)
            if not self.grid.rectangle_at(*new_corner).empty:
                events.append(self._focus_moved())
                audio.append(self._data_request())
        events.append(announce(f"Selecting: {self.selection.dimensions_text()} region."))

    def _arrow(self, action: str, events, audio) -> None:
        if self.selection.phase == regions.EXPANDING:
            self._expand_selection(action, events, audio)
            return
        # An armed (not yet anchored) selection follows the cursor normally.
        self._move_normally(action, events, audio)
        if self.selection.phase == regions.ANCHORED:
            self.selection = replace(self.selection, anchor=self._cursor_cell())

    def _on_left(self, events, audio) -> None:
        self._arrow("left", events, audio)

    def _on_right(self, events, audio) -> None:
        self._arrow("right", events, audio)

    def _on_forward(self, events, audio) -> None:
        self._arrow("forward", events, audio)

    def _on_back(self, events, audio) -> None:
        self._arrow("back", events, audio)

    def _on_toggle_mode(self, events, audio) -> None:
        if self._selection_active():
            events.append(announce(BUSY_SELECTION_TEXT))
            return
        if self.cursor.interaction == nav.JUMP:
            self._exit_jump_in_place()
        old_mode = self.cursor.mode
        if old_mode == nav.SURFACE:
            rect = self.grid.rectangle_at(*self.cursor.grid_pos)
            self.cursor = replace(
                self.cursor, mode=nav.POINT, point_index=rect.member_indices[0]
            )
        else:
            x, _y, z = self.dataset.points[self.cursor.point_index]
            self.cursor = replace(self.cursor, mode=nav.SURFACE, grid_pos=self.grid.cell_of(x, z))
        events.append(EventEnvelope(DISPLAY_MODE_CHANGED, {"mode": self.cursor.mode}))
        events.append(
            announce(
                nav.mode_switch_effects(old_mode, self.cursor.mode, self.cursor, self.grid, self.dataset)
            )
        )
        events.append(self._focus_moved())
        audio.append(self._data_request())

    def _jump_to_current_peak(self, events, audio, entering: bool) -> None:
        peak = self.peaks.current()
        self.cursor = replace(self.cursor, grid_pos=salience.peak_position(peak, self.grid))
        events.append(self._focus_moved())
        events.append(announce(salience.jump_announcement(self.peaks, entering)))
        kind = AUDIO_PEAK_POSITIVE if peak.sign == salience.POSITIVE else AUDIO_PEAK_NEGATIVE
        audio.append(AudioRequest(kind))

    def _on_jump(self, events, audio) -> None:
        if self._selection_active():
            events.append(announce(BUSY_SELECTION_TEXT))
            return
        if self.cursor.mode == nav.POINT:
            events.append(announce("Jump to peak is available in surface mode."))
            return
        if self.cursor.interaction == nav.JUMP:
            self.peaks = self.peaks.advanced()
            self._jump_to_current_peak(events, audio, entering=False)
            return
        try:
            self.peaks = salience.enter_jump(self.grid, self.config.salience)
        except NoPeaksError:
            events.append(announce("No peaks found."))
            return
        saved = self.cursor.grid_pos
        self.cursor = nav.with_interaction(self.cursor, nav.JUMP, saved_pos=saved)
        self._jump_to_current_peak(events, audio, entering=True)

    def _on_select(self, events, audio) -> None:
        if self._selection_active():
            events.append(announce(BUSY_SELECTION_TEXT))
            return
        if self.cursor.interaction == nav.JUMP:
            self._exit_jump_in_place()
        cell = self._cursor_cell()
        if self.config.selection_flow == "refined":
            self.selection = regions.SelectionState(
                phase=regions.EXPANDING, anchor=cell, cursor_corner=cell
            )
            events.append(announce("Selecting: 1 by 1 region."))
        else:
            self.selection = regions.SelectionState(
                phase=regions.ANCHORED, anchor=cell, cursor_corner=cell
            )
            events.append(
                announce("Selection mode. Move to the start corner and press Enter to anchor.")
            )

    def _snap_off_empty_cell(self, events, audio) -> None:
        """After a selection ends, never leave the cursor on an empty cell."""
        if self.cursor.mode != nav.SURFACE:
            return
        pos = self.cursor.grid_pos
        if self.grid.rectangle_at(*pos).empty:
            self.cursor = replace(self.cursor, grid_pos=nav.nearest_occupied_cell(self.grid, pos))
            events.append(self._focus_moved())
            audio.append(self._data_request())

    def _on_confirm(self, events, audio) -> None:
        if self.selection.phase == regions.ANCHORED:
            cell = self._cursor_cell()
            self.selection = regions.SelectionState(
                phase=regions.EXPANDING, anchor=cell, cursor_corner=cell
            )
            events.append(announce("Selection anchored. Selecting: 1 by 1 region."))
            return
        if self.selection.phase == regions.EXPANDING:
            self.buffer, confirm_events = regions.confirm_selection(
                self.selection, self.cursor.mode, self.grid, self.dataset, self.stats
            )
            events.extend(confirm_events)
            self.selection = regions.SelectionState()
            self._snap_off_empty_cell(events, audio)
            self._inside_region = self.buffer.bounds.contains(self._cursor_cell())
            return
        # Enter outside a selection has no meaning; swallow it.

    def _on_cancel(self, events, audio) -> None:
        if self._selection_active():
            self.selection = regions.SelectionState()
            events.append(announce("Selection cancelled."))
            self._snap_off_empty_cell(events, audio)
            return
        if self.cursor.interaction == nav.JUMP:
            saved = self.cursor.saved_pos
            self.cursor = nav.with_interaction(replace(self.cursor, grid_pos=saved), nav.IDLE)
            self.peaks = None
            events.append(self._focus_moved())
            events.append(announce("Jump mode exited. Position restored."))
            audio.append(self._data_request())
            return
        if self.program is not None and self.program.state in (sweep.PLAYING, sweep.PAUSED):
            self.program = sweep.stop(self.program)
            self.cursor = nav.with_interaction(self.cursor, nav.IDLE)
            events.append(
                EventEnvelope(
                    AUTOPLAY_STATE_CHANGED,
                    {"state": "stopped", "perspective": self.program.perspective},
                )
            )

    def _on_playback(self, events, audio) -> None:
        if self._selection_active():
            events.append(announce(BUSY_SELECTION_TEXT))
            return
        if self.buffer is None:
            events.append(announce("No buffer stored. Press D to select a region."))
            return
        if not self.buffer.items:
            events.append(announce("Buffer region is empty."))
            return
        self.buffer, plan = regions.playback_plan(
            self.buffer, self.stats, self.config.sonification
        )
        if self.buffer.playback_mode == regions.SEQUENTIAL:
            events.append(announce(f"Sequential playback: {len(plan)} items."))
        else:
            events.append(announce("Aggregated playback: region mean."))
        audio.append(AudioRequest(AUDIO_BUFFER_PLAN, plan=plan))

    def _on_autoplay(self, events, audio) -> None:
        if self._selection_active():
            events.append(announce(BUSY_SELECTION_TEXT))
            return
        if self.cursor.interaction == nav.JUMP:
            self._exit_jump_in_place()

        if self.program is not None and self.program.state == sweep.PAUSED:
            self.program = sweep.resume(self.program)
            self.cursor = nav.with_interaction(self.cursor, nav.AUTOPLAY)
            events.append(
                EventEnvelope(
                    AUTOPLAY_STATE_CHANGED,
                    {"state": "playing", "perspective": self.program.perspective},
                )
            )
            return

        if self.cursor.mode == nav.POINT:
            # Sweeps traverse grid cells; hop back to the surface tier first.
            x, _y, z = self.dataset.points[self.cursor.point_index]
            self.cursor = replace(self.cursor, mode=nav.SURFACE, grid_pos=self.grid.cell_of(x, z))
            events.append(EventEnvelope(DISPLAY_MODE_CHANGED, {"mode": nav.SURFACE}))
            events.append(
                announce(
                    nav.mode_switch_effects(nav.POINT, nav.SURFACE, self.cursor, self.grid, self.dataset)
                )
            )
            events.append(self._focus_moved())
            audio.append(self._data_request())

        perspective = sweep.next_perspective(
            self._last_perspective, self.config.autoplay.perspective
        )
        self._last_perspective = perspective
        self.program = sweep.build_sweep(self.grid, perspective, self.config.autoplay.interval_s)
        self.cursor = nav.with_interaction(self.cursor, nav.AUTOPLAY)
        events.append(
            EventEnvelope(AUTOPLAY_STATE_CHANGED, {"state": "playing", "perspective": perspective})
        )
