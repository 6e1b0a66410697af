var state = require('./state');

state.count = 5;
state.count += 2;
state.count++;
var before = ++state.count;
var shown = state.label = 'set';
console.log(state.read(), before, shown, state.count--);
console.log(state.read());
