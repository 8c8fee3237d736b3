/* tslint:disable */
/* eslint-disable */

/**
 * Result of compressing one synthetic trajectory.
 */
export class Demo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Per-point distance between input and reconstruction.
     */
    errors(): Float64Array;
    /**
     * Interleaved `x, y` of every uniform-grid sample.
     */
    grid(): Float64Array;
    /**
     * Interleaved `x, y` of the input.
     */
    original(): Float64Array;
    /**
     * Interleaved `x, y` decoded at the input timestamps.
     */
    reconstructed(): Float64Array;
    times(): Float64Array;
    readonly block_size: number;
    readonly compressed_bytes: number;
    readonly corrections: number;
    readonly eps_f: number;
    readonly max_sed: number;
    readonly mean_sed: number;
    readonly outliers: number;
    readonly ratio: number;
    readonly raw_bytes: number;
    readonly segments: number;
}

/**
 * Predicted error behaviour inside one block.
 */
export class Prediction {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Probability that the 2-D error at index `k` exceeds the bound.
     */
    exceedance(): Float64Array;
    /**
     * Per-dimension standard deviation of the error at block index `k = 0..=b_s`.
     */
    sigma(): Float64Array;
    readonly mean_error: number;
    readonly midpoint_exceedance: number;
}

/**
 * Aggregate statistics over a list of error bounds.
 */
export class Sweep {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    epsilon(): Float64Array;
    max_sed(): Float64Array;
    mean_sed(): Float64Array;
    ratio(): Float64Array;
    /**
     * Coefficient of determination of a line fitted to mean error over epsilon.
     */
    readonly r_squared: number;
    readonly ratio_non_increasing: boolean;
}

/**
 * Compresses a seeded synthetic trajectory (`smooth`, `jittery` or `irregular`).
 */
export function compress_demo(kind: string, points: number, seed: number, epsilon: number, profile: string): Demo;

export function predict_errors(epsilon: number, a: number, block_size: number): Prediction;

export function sweep_demo(kind: string, points: number, seed: number, profile: string, epsilon: Float64Array): Sweep;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_prediction_free: (a: number, b: number) => void;
    readonly __wbg_sweep_free: (a: number, b: number) => void;
    readonly compress_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly demo_block_size: (a: number) => number;
    readonly demo_compressed_bytes: (a: number) => number;
    readonly demo_corrections: (a: number) => number;
    readonly demo_eps_f: (a: number) => number;
    readonly demo_errors: (a: number) => [number, number];
    readonly demo_grid: (a: number) => [number, number];
    readonly demo_max_sed: (a: number) => number;
    readonly demo_mean_sed: (a: number) => number;
    readonly demo_original: (a: number) => [number, number];
    readonly demo_outliers: (a: number) => number;
    readonly demo_ratio: (a: number) => number;
    readonly demo_raw_bytes: (a: number) => number;
    readonly demo_reconstructed: (a: number) => [number, number];
    readonly demo_segments: (a: number) => number;
    readonly demo_times: (a: number) => [number, number];
    readonly predict_errors: (a: number, b: number, c: number) => [number, number, number];
    readonly prediction_exceedance: (a: number) => [number, number];
    readonly prediction_sigma: (a: number) => [number, number];
    readonly sweep_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly sweep_epsilon: (a: number) => [number, number];
    readonly sweep_max_sed: (a: number) => [number, number];
    readonly sweep_mean_sed: (a: number) => [number, number];
    readonly sweep_ratio: (a: number) => [number, number];
    readonly sweep_ratio_non_increasing: (a: number) => number;
    readonly prediction_mean_error: (a: number) => number;
    readonly prediction_midpoint_exceedance: (a: number) => number;
    readonly sweep_r_squared: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
