//! Shared numerical building blocks: adaptive quadrature, bracketed root
//! finding, and an adaptive Runge–Kutta integrator.

pub mod ode;
pub mod quad;
pub mod roots;
