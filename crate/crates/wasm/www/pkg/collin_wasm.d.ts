/* tslint:disable */
/* eslint-disable */

/**
 * `{a, sqrt_a, b}` for one `(n, k)`.
 */
export function adjustment(n: number, k: number): string;

/**
 * The standard `n = 15..200`, `k = 3..15` grid of `what` (`a`, `b` or
 * `sqrt-a`).
 */
export function adjustment_grid(what: string): string;

/**
 * Classic and adjusted verdicts for one `t_exp`.
 */
export function decide_rule(t_exp: number, n: number, k: number, alpha: number): string;

/**
 * Max VIF and max aVIF for `k = 3..=max_predictors + 1` on one
 * independent-normals draw: `{k: [...], max_vif: [...], max_avif: [...],
 * vif_threshold_k, avif_threshold_k}`.
 */
export function figure_series(n: number, seed: number, max_predictors: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly adjustment: (a: number, b: number) => [number, number];
    readonly adjustment_grid: (a: number, b: number) => [number, number];
    readonly decide_rule: (a: number, b: number, c: number, d: number) => [number, number];
    readonly figure_series: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
