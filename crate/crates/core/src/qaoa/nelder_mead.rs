//! Derivative-free simplex minimization.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMead {
    /// Stop once the simplex's value spread drops below this.
    pub tolerance: f64,
    pub max_evals: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

impl NelderMead {
    /// Minimizes `f` from `x0`, with the initial simplex spanned by
    /// `x0 + steps[i] * e_i`.
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], steps: &[f64]) -> Minimum {
        let dim = x0.len();
        assert_eq!(steps.len(), dim);
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        simplex.push((x0.to_vec(), eval(x0, &mut evals)));
        for i in 0..dim {
            let mut x = x0.to_vec();
            x[i] += steps[i];
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        let mut converged = false;
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if simplex[dim].1 - simplex[0].1 < self.tolerance {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }
            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
                .collect();
            let toward = |t: f64, worst: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(worst)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let worst = simplex[dim].0.clone();
            let xr = toward(REFLECT, &worst);
            let fr = eval(&xr, &mut evals);
            if fr < simplex[0].1 {
                let xe = toward(REFLECT * EXPAND, &worst);
                let fe = eval(&xe, &mut evals);
                simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (xr, fr);
                continue;
            }
            // Contract outside if the reflection beat the worst point, else inside.
            let (xc, fc) = if fr < simplex[dim].1 {
                let xc = toward(REFLECT * CONTRACT, &worst);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = toward(-CONTRACT, &worst);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < fr.min(simplex[dim].1) {
                simplex[dim] = (xc, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best
                    .iter()
                    .zip(&vertex.0)
                    .map(|(b, v)| b + SHRINK * (v - b))
                    .collect();
                let v = eval(&x, &mut evals);
                *vertex = (x, v);
            }
        }
        let (x, value) = simplex.swap_remove(0);
        Minimum {
            x,
            value,
            evaluations: evals,
            converged,
        }
    }
}
