// legacy callers still use require('./old') and module.exports
import old from './old';
export { old };
