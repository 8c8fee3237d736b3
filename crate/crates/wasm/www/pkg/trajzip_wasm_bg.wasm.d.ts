/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_prediction_free: (a: number, b: number) => void;
export const __wbg_sweep_free: (a: number, b: number) => void;
export const compress_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const demo_block_size: (a: number) => number;
export const demo_compressed_bytes: (a: number) => number;
export const demo_corrections: (a: number) => number;
export const demo_eps_f: (a: number) => number;
export const demo_errors: (a: number) => [number, number];
export const demo_grid: (a: number) => [number, number];
export const demo_max_sed: (a: number) => number;
export const demo_mean_sed: (a: number) => number;
export const demo_original: (a: number) => [number, number];
export const demo_outliers: (a: number) => number;
export const demo_ratio: (a: number) => number;
export const demo_raw_bytes: (a: number) => number;
export const demo_reconstructed: (a: number) => [number, number];
export const demo_segments: (a: number) => number;
export const demo_times: (a: number) => [number, number];
export const predict_errors: (a: number, b: number, c: number) => [number, number, number];
export const prediction_exceedance: (a: number) => [number, number];
export const prediction_sigma: (a: number) => [number, number];
export const sweep_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const sweep_epsilon: (a: number) => [number, number];
export const sweep_max_sed: (a: number) => [number, number];
export const sweep_mean_sed: (a: number) => [number, number];
export const sweep_ratio: (a: number) => [number, number];
export const sweep_ratio_non_increasing: (a: number) => number;
export const prediction_mean_error: (a: number) => number;
export const prediction_midpoint_exceedance: (a: number) => number;
export const sweep_r_squared: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
