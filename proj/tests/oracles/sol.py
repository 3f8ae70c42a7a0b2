from sympy import *
import mpmath as mp
t,x,y=symbols('t x y')
A,B,c3=symbols('A B c3')
u=A/(2*(c3+2*t))*(1+LambertW(exp(-1-4*(B+x)/A)/A))
D=diff(u,x,t)-diff(u*diff(u,x),x)-diff(u,y,2)
f=lambdify((t,x,A,B,c3),D,'mpmath')
mx=0
for tt in [0,0.5,1,2]:
  for xx in [-1,0,1]:
    mx=max(mx,abs(f(tt,xx,1,0,1)))
print('red212b2 solution residual max',mx)
# w(z) ODE check
z=symbols('z')
w=A/2*(1+LambertW(exp(-1-4*(B+z)/A)/A))
ode=2*diff(w,z)+diff(w,z)**2+w*diff(w,z,2)
print('red212b2 solution ode', simplify(ode), [N(ode.subs({A:a,B:b,z:zz})) for a,b,zz in [(1,0,0.3),(2,1,-0.5)]])
# implicit so212afn
Wv=symbols('w')
Av,Bv=symbols('A B')
f=-2*exp(-Av/c3)*(2+c3*z*Wv)/(c3*z)
rel=Wv-(2+c3*z*Wv)/(c3*z*LambertW(f))-Bv
Fz=diff(rel,z); Fw=diff(rel,Wv)
wp=-Fz/Fw
def Dz(e): return diff(e,z)+diff(e,Wv)*wp
wpp=Dz(wp)
ode=(4+2*c3*Wv*z)*wp+c3*z**2*wp**2+z*(2+c3*Wv*z)*wpp
g=lambdify((z,Wv,Av,Bv,c3),ode,'mpmath')
relf=lambdify((z,Wv,Av,Bv,c3),rel,'mpmath')
mp.mp.dps=30
for (a,b,cc) in [(1,0,1),(1,0,-1),(2,1,1),(-1,0,1)]:
  for zz in [0.5,1,2,-1,3]:
    # find w solving rel
    try:
      ws=mp.findroot(lambda ww: relf(zz,ww,a,b,cc), 0.3)
      print('A,B,c3',a,b,cc,'z',zz,'w',mp.nstr(ws,8),'ode',mp.nstr(g(zz,ws,a,b,cc),5))
    except Exception as e: print('fail',a,b,cc,zz,str(e)[:60])
