from lib import *
C1,C2=Rational(1,2),Rational(3,7)
chk('L2.8b1', exp(x/c1)/(y+2*c2)**2, w0/exp(x/c1), {x: c1*log(z*(y+2*c2)**2)}, -2*w0**2+(3*w0*z-6*c1**2*z**2)*w1-z**2*w1**2+(-w0*z**2-4*c1**2*z**3)*w2)
chk('L2.8b2', (c1-x)*exp(y/c2), (c1-x)**2*w0, {y: c2*log(z/(c1-x))}, -6*c2**2*w0**2-(z+8*c2**2*w0*z)*w1-c2**2*z**2*w1**2-(z**2+c2**2*w0*z**2)*w2)
for K in [Rational(1),Rational(0),Rational(1,3),Rational(-1,2),Rational(2)]:
    r=(3-6*K)/(2-3*K); s=(6*K-2)/(3-6*K)
    T=c3+(3-6*K)*t
    chk('L2.10 k0=%s'%K, T/y**r, T**s*w0, {y:(T/z)**(1/r)}, (-5+9*K)*w1+3*z*(-1+2*K)*w2)
chk('L2.10 k0=1/2', exp(-t/(2*c3))*y, exp(t/c3)*w0, {y: z*exp(t/(2*c3))}, w2)
for K in [Rational(0),Rational(1,2),Rational(-1,15),Rational(1,21),Rational(2),Rational(-1)]:
    s=3*(K-1)/(1+3*K); r=2*(3*K-1)/(3*(1-K))
    T=3*(1-K)*t+2*c3
    chk('L2.12a k0=%s'%K, T*x**s, T**r*w0, {x:(z/T)**(1/s)}, ((-1-s)*w0*z**(1+r)+3*(1+r)*(K-1))*w1-s*z**(2+r)*w1**2+(-s*w0*z**(2+r)+3*z*(K-1))*w2)
