from lib import *
h=Function('h'); g=Function('g')
for name,zexpr,uexpr in [('L2.4',t,(w0-y**2)*diff(h(t),t,2)/(4*h(t))),('L2.6',t,diff(g(t),t)*(w0-x/g(t))),('L2.9',t,y**2*w0)]:
    r=resid(zexpr,uexpr,{})
    print(name, factor(simplify(r)))
