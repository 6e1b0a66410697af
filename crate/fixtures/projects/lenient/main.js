var load = require('./loader');
console.log(load(21));
