/* tslint:disable */
/* eslint-disable */

/**
 * Transport along `K_{a,b} ⊆ K_{a+da,b+db}` (or descent when `down`), with
 * the conductors on both sides.
 */
export function base_change(p: number, qdeg: number, a: number, b: number, da: number, db: number, down: boolean, expr: string): string;

/**
 * Conductors, forms and CC coefficients of `t^p - t = expr` over `K_{a,b}`.
 */
export function conductor_report(p: number, qdeg: number, a: number, b: number, expr: string): string;

/**
 * Best curve ratios `sw_1d / mu` and `dimtot_1d / mu` for each `mu`, next
 * to the symbolic conductors.
 */
export function oracle_profile(p: number, qdeg: number, a: number, b: number, expr: string, mu_max: number, deg_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly base_change: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly conductor_report: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly oracle_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
