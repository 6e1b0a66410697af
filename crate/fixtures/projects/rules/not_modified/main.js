var colors = require('./colors');
colors.blue = '#00f';
console.log(colors.red, colors.blue);
