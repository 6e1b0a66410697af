var config = require('./config.json');
console.log(config.name);
