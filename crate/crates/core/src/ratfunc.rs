//! Elements of K(x) as numerator/denominator pairs, reduced on demand.

use crate::field::Field;
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc<E> {
    pub num: UniPoly<E>,
    pub den: UniPoly<E>,
}

impl<E: Clone + PartialEq> RatFunc<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, num: UniPoly<E>, den: UniPoly<E>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }.reduced(f)
    }

    pub fn from_poly<F: Field<Elem = E>>(f: &F, num: UniPoly<E>) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(f),
        }
    }

    /// Lowest terms with a monic denominator.
    pub fn reduced<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.num.is_zero() {
            return RatFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(f),
            };
        }
        let g = self.num.gcd(f, &self.den);
        let num = self.num.div_exact(f, &g).expect("gcd divides");
        let den = self.den.div_exact(f, &g).expect("gcd divides");
        let lc = f.inv(den.lead());
        RatFunc {
            num: num.scale(f, &lc),
            den: den.scale(f, &lc),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value lies in K[x].
    pub fn is_polynomial<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.den.divides(f, &self.num)
    }

    /// The value as a polynomial, if it is one.
    pub fn as_polynomial<F: Field<Elem = E>>(&self, f: &F) -> Option<UniPoly<E>> {
        self.num.div_exact(f, &self.den)
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let num = self.num.mul(f, &o.den).add(f, &o.num.mul(f, &self.den));
        RatFunc::new(f, num, self.den.mul(f, &o.den))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        RatFunc::new(f, self.num.mul(f, &o.num), self.den.mul(f, &o.den))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        RatFunc {
            num: self.num.neg(f),
            den: self.den.clone(),
        }
    }

    /// Equality as elements of K(x).
    pub fn equals<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> bool {
        self.num.mul(f, &o.den) == o.num.mul(f, &self.den)
    }
}
