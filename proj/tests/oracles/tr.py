from sympy import *
z,w,p,q=symbols('z w p q')   # p=w', q=w''
R,Wv,P,Qd=symbols('r W P Q')  # new indep, dep, W', W''
c3=symbols('c3')
def Dz(e): return diff(e,z)+diff(e,w)*p+diff(e,p)*q
def change(ode,Rz,Sz,inv):
    # W' = Dz(S)/Dz(R)
    wp=solve(Eq(P*Dz(Rz),Dz(Sz)),p)[0]
    Wp=Dz(Sz)/Dz(Rz)
    wpp=solve(Eq(Qd,(Dz(Wp)/Dz(Rz)).subs(p,wp)),q)[0]
    e=ode.subs({q:wpp}).subs({p:wp})
    e=e.subs(inv)
    return factor(simplify(e))
red21=-w**2+2*(w*z-1)*p-z**2*p**2-(4*z+w*z**2)*q
t1=change(red21,w*z,-log(w),{w:exp(-Wv),z:R*exp(Wv)})
tg=-1+(2-5*R)*P+(-8*R+11*R**2)*P**2-6*R**2*(1+R)*P**3+R*(4+R)*Qd
print('red21t1 ratio',simplify(t1/tg))
b2=2*p+p**2+w*q
t2=change(b2,w,z,{w:R,z:Wv}); print('b2 ratio',simplify(t2/(2*P**2+P-R*Qd)))
b1=(4+2*c3*w*z)*p+c3*z**2*p**2+z*(2+c3*w*z)*q
t3=change(b1,2/z+c3*w,3*c3*w/2+2/z,{w:2*(Wv-R)/c3, z:2/(3*R-2*Wv)})
tg3=6/R-16/R*P+14/R*P**2-4/R*P**3+Qd
print('abred ratio',simplify(t3/tg3))
# reduce order
xi,X,Xp=symbols('xi X Xp')
xiz=2/z+c3*w; Xz=z**2*p
wpp=solve(Eq(Xp*Dz(xiz),Dz(Xz)),q)[0]
e=b1.subs(q,wpp).subs(p,X/z**2).subs(w,(xi-2/z)/c3)
print('reduce_order', factor(simplify(e)), ' ratio', simplify(e/(-c3*X**2+xi*(2-c3*X)*Xp)))
# second: v=X, Q=-ln xi + X on ODE in (xi, X, X')
f1=-c3*X**2+xi*(2-c3*X)*Xp
# treat xi indep, X dep; new indep v = X, dep Q = -ln(xi)+X
v,Qs,Qp=symbols('v Q Qp')
# dQ/dv = (-1/xi + Xp)/Xp  -> solve Xp
Xp_sol=solve(Eq(Qp,(-1/xi+Xp)/Xp),Xp)[0]
e2=f1.subs(Xp,Xp_sol).subs({X:v})
e2=simplify(e2)
print('second', factor(e2), ' ratio', simplify(e2/(-2*c3*v*(1+v)-c3*v**2*Qp)))
# Q' from eq:  Q' = -2(1+v)/v
A=symbols('A')
for Qsol in [A+2/(c3*v)+v*log(v), A-2*v-2*log(v)]:
    print('Q', Qsol, simplify(-2*c3*v*(1+v)-c3*v**2*diff(Qsol,v)))
