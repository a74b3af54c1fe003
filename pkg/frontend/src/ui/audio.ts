/**
 * Live Web Audio playback of engine audio parameters.
 *
 * The signal chain mirrors the offline renderer: oscillator -> 5 ms gain
 * envelope -> lowpass -> stereo pan, then a dry tap and a pre-delayed
 * convolution-reverb tap mixed by the wet fraction into a shared limiter.
 * Tones mix additively; concurrent reference + data tones are expected.
 */

import { AudioParams, PlanEntry } from "../engine/types.js";
import { AudioPlayer } from "./backends.js";

const IR_SECONDS = 2.2;
const IR_DECAY_POWER = 3.5;
const EDGE_RAMP_S = 0.005;

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function buildImpulseResponse(ctx: BaseAudioContext, seed = 7): AudioBuffer {
  const n = Math.round(IR_SECONDS * ctx.sampleRate);
  const buffer = ctx.createBuffer(2, n, ctx.sampleRate);
  for (let ch = 0; ch < 2; ch++) {
    const rand = mulberry32(seed + ch);
    const data = buffer.getChannelData(ch);
    let energy = 0;
    for (let i = 0; i < n; i++) {
      const envelope = (1 - i / (n - 1)) ** IR_DECAY_POWER;
      data[i] = (rand() * 2 - 1) * envelope;
      energy += data[i] * data[i];
    }
    const norm = Math.sqrt(energy);
    for (let i = 0; i < n; i++) data[i] /= norm;
  }
  return buffer;
}

export class WebAudioPlayer implements AudioPlayer {
  private readonly ctx: AudioContext;
  private readonly convolver: ConvolverNode;
  private readonly limiter: DynamicsCompressorNode;

  constructor(ctx?: AudioContext) {
    this.ctx = ctx ?? new AudioContext();
    this.limiter = this.ctx.createDynamicsCompressor();
    this.limiter.threshold.value = -3;
    this.limiter.ratio.value = 20;
    this.limiter.connect(this.ctx.destination);
    this.convolver = this.ctx.createConvolver();
    this.convolver.buffer = buildImpulseResponse(this.ctx);
    this.convolver.connect(this.limiter);
  }

  async resume(): Promise<void> {
    if (this.ctx.state === "suspended") await this.ctx.resume();
  }

  playParams(params: AudioParams, offsetS = 0): void {
    const t0 = this.ctx.currentTime + offsetS;
    const osc = this.ctx.createOscillator();
    osc.type = params.waveform;
    osc.frequency.setValueAtTime(params.freq_hz, t0);
    if (params.sweep_to_hz !== undefined) {
      osc.frequency.linearRampToValueAtTime(params.sweep_to_hz, t0 + params.dur_s);
    }

    const envelope = this.ctx.createGain();
    const ramp = Math.min(EDGE_RAMP_S, params.dur_s / 2);
    envelope.gain.setValueAtTime(0, t0);
    envelope.gain.linearRampToValueAtTime(params.gain, t0 + ramp);
    envelope.gain.setValueAtTime(params.gain, t0 + params.dur_s - ramp);
    envelope.gain.linearRampToValueAtTime(0, t0 + params.dur_s);

    const lowpass = this.ctx.createBiquadFilter();
    lowpass.type = "lowpass";
    lowpass.frequency.value = params.lowpass_hz;

    const panner = this.ctx.createStereoPanner();
    panner.pan.value = params.pan;

    osc.connect(envelope);
    envelope.connect(lowpass);
    lowpass.connect(panner);

    const dry = this.ctx.createGain();
    dry.gain.value = 1 - params.wet;
    panner.connect(dry);
    dry.connect(this.limiter);

    if (params.wet > 0) {
      const predelay = this.ctx.createDelay(1.0);
      predelay.delayTime.value = params.predelay_ms / 1000;
      const wet = this.ctx.createGain();
      wet.gain.value = params.wet;
      panner.connect(predelay);
      predelay.connect(wet);
      wet.connect(this.convolver);
    }

    osc.start(t0);
    osc.stop(t0 + params.dur_s + 0.02);
  }

  playPlan(plan: PlanEntry[], toParams: (entry: PlanEntry) => AudioParams): void {
    for (const entry of plan) {
      this.playParams(toParams(entry), entry.start_s);
    }
  }
}
