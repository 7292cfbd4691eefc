//! The same subtraction-free expression evaluated in four semifields.

use totpos::semifield::{valuation, PosRat, PosRatFunc, Semifield, TropInt, Unit};

fn expr<K: Semifield>(a: &K, b: &K, c: &K) -> K {
    a.mul(b).add(&c.mul(c)).div(&a.add(c))
}

fn main() {
    let q = [PosRat::int(2), PosRat::from_ints(1, 3), PosRat::int(5)];
    println!("posrat:  {}", expr(&q[0], &q[1], &q[2]));

    let t = [TropInt::new(2), TropInt::new(-1), TropInt::new(4)];
    println!("tropint: {}", expr(&t[0], &t[1], &t[2]));

    println!("unit:    {}", expr(&Unit, &Unit, &Unit));

    // t^2, (1+t)/t, t^4 as rational functions; the valuation matches the tropint line
    let f = [
        PosRatFunc::t_pow(2),
        PosRatFunc::one().add(&PosRatFunc::t_pow(1)).div(&PosRatFunc::t_pow(1)),
        PosRatFunc::t_pow(4),
    ];
    let r = expr(&f[0], &f[1], &f[2]);
    println!("posratfunc: {r}  valuation {}", valuation(&r));
}
