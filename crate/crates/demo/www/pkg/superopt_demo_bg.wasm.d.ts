/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_completionview_free: (a: number, b: number) => void;
export const __wbg_nehariview_free: (a: number, b: number) => void;
export const __wbg_svdview_free: (a: number, b: number) => void;
export const completionView: (a: number, b: number, c: number) => [number, number, number];
export const completionview_defects: (a: number) => [number, number];
export const completionview_det_arg: (a: number) => [number, number];
export const completionview_eta: (a: number) => number;
export const completionview_moduli: (a: number) => [number, number];
export const completionview_n: (a: number) => number;
export const nehariView: (a: number, b: number, c: number, d: number) => [number, number, number];
export const nehariview_err_abs: (a: number) => [number, number];
export const nehariview_f_coeffs: (a: number) => [number, number];
export const nehariview_phi_abs: (a: number) => [number, number];
export const svdView: (a: number, b: number, c: number, d: number) => [number, number, number];
export const svdview_err_sv: (a: number) => [number, number];
export const svdview_phi_sv: (a: number) => [number, number];
export const svdview_values: (a: number) => [number, number];
export const nehariview_sigma: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
