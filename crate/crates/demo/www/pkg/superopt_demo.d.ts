/* tslint:disable */
/* eslint-disable */

/**
 * Moduli of the entries of 𝒱 = (Υ, Θ̄) on the grid, arg det 𝒱, and the defects.
 */
export class CompletionView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Unitarity, analytic minors, co-analytic minors, det spread, |det| − 1.
     */
    readonly defects: Float64Array;
    readonly det_arg: Float64Array;
    /**
     * ‖H_Θ̄‖.
     */
    readonly eta: number;
    /**
     * Grid-major: entry (i, j) at point l is `moduli[(l·n + i)·n + j]`.
     */
    readonly moduli: Float64Array;
    readonly n: number;
}

/**
 * |φ| and |φ − F| on the grid, with σ₀ = ‖H_φ‖.
 */
export class NehariView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly err_abs: Float64Array;
    /**
     * Interleaved (re, im) of F̂(0), F̂(1), … up to degree 7.
     */
    readonly f_coeffs: Float64Array;
    readonly phi_abs: Float64Array;
    readonly sigma: number;
}

/**
 * Singular values of Φ and of Φ − F on the grid; rows are s₀ then s₁.
 */
export class SvdView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly err_sv: Float64Array;
    readonly phi_sv: Float64Array;
    /**
     * Superoptimal values t₀ ≥ t₁.
     */
    readonly values: Float64Array;
}

export function completionView(n: number, degree: number, seed: number): CompletionView;

export function nehariView(re: Float64Array, im: Float64Array): NehariView;

export function svdView(a: Float64Array, b: Float64Array): SvdView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_completionview_free: (a: number, b: number) => void;
    readonly __wbg_nehariview_free: (a: number, b: number) => void;
    readonly __wbg_svdview_free: (a: number, b: number) => void;
    readonly completionView: (a: number, b: number, c: number) => [number, number, number];
    readonly completionview_defects: (a: number) => [number, number];
    readonly completionview_det_arg: (a: number) => [number, number];
    readonly completionview_eta: (a: number) => number;
    readonly completionview_moduli: (a: number) => [number, number];
    readonly completionview_n: (a: number) => number;
    readonly nehariView: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly nehariview_err_abs: (a: number) => [number, number];
    readonly nehariview_f_coeffs: (a: number) => [number, number];
    readonly nehariview_phi_abs: (a: number) => [number, number];
    readonly svdView: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly svdview_err_sv: (a: number) => [number, number];
    readonly svdview_phi_sv: (a: number) => [number, number];
    readonly svdview_values: (a: number) => [number, number];
    readonly nehariview_sigma: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
