#pragma once

// Data-parallel kernels behind the spectral operators and the time stepper.
// Every kernel exists in two backends: a serial reference and an OpenMP
// version. Reductions use a fixed chunk decomposition with an ordered
// combine, so both backends produce bit-identical results for any thread
// count. The active backend is a process-wide switch (default OpenMP).

#include <complex>
#include <cstddef>

namespace bo::kernels {

using cplx = std::complex<double>;

enum class Backend { Serial, OpenMP };

Backend backend();
void set_backend(Backend b);
int thread_count();

// ---- pointwise, real ----
void scale(const double* x, double a, double* y, std::size_t n);       // y = a*x
void square(const double* x, double* y, std::size_t n);                // y = x*x
void multiply(const double* x, const double* y, double* z, std::size_t n);
void add(const double* x, const double* y, double* z, std::size_t n);
void sub(const double* x, const double* y, double* z, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* z,
           std::size_t n);                                             // z = a*x + b*y

// ---- pointwise, complex spectra (half-complex layout, bins 0..n-1) ----
void cmul(const cplx* x, const cplx* table, cplx* y, std::size_t n);   // y = x.*table
void cscale(const cplx* x, double a, cplx* y, std::size_t n);
void czero_tail(cplx* x, std::size_t keep, std::size_t n);             // x[i]=0 for i>keep

// r = -0.5*i*k[i]*x[i] for i<=keep, 0 beyond (conservative BO nonlinearity)
void nonlinear_combine(const cplx* x, const double* k, std::size_t keep,
                       cplx* r, std::size_t n);

// IFRK4 stage helpers and final combine (E = exp(L dt/2), E2 = exp(L dt))
void stage_axpy_mul(const cplx* a, double h, const cplx* k1, const cplx* e,
                    cplx* out, std::size_t n);                         // out = e.*(a + h*k1)
void stage_axpy(const cplx* ea, double h, const cplx* k2, cplx* out,
                std::size_t n);                                        // out = ea + h*k2
void rk4_combine(cplx* a, double dt, const cplx* k1, const cplx* k2,
                 const cplx* k3, const cplx* k4, const cplx* e,
                 const cplx* e2, std::size_t n);

// ---- reductions (deterministic: fixed chunks, ordered combine) ----
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_cube(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
bool all_finite(const double* x, std::size_t n);

// sum of w[i]*|c[i]|^2 over bins (weights carry any double-count factors)
double weighted_mod2(const cplx* c, const double* w, std::size_t n);

}  // namespace bo::kernels
