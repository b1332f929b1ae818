use num_complex::Complex64;

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sums of real and imaginary parts and of their squares.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexSum {
    pub re: NeumaierSum,
    pub im: NeumaierSum,
    pub re_sq: NeumaierSum,
    pub im_sq: NeumaierSum,
    pub count: u64,
}

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.re_sq.add(z.re * z.re);
        self.im_sq.add(z.im * z.im);
        self.count += 1;
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
        self.re_sq.merge(&other.re_sq);
        self.im_sq.merge(&other.im_sq);
        self.count += other.count;
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn mean(&self) -> Complex64 {
        self.total() / self.count as f64
    }

    /// Sample standard deviations of the real and imaginary parts.
    pub fn std_dev(&self) -> (f64, f64) {
        let n = self.count as f64;
        if self.count < 2 {
            return (0.0, 0.0);
        }
        let var = |s: f64, sq: f64| ((sq - s * s / n) / (n - 1.0)).max(0.0);
        (
            var(self.re.value(), self.re_sq.value()).sqrt(),
            var(self.im.value(), self.im_sq.value()).sqrt(),
        )
    }
}
