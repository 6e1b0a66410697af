var limits = require('./limits');
console.log(limits.min);
